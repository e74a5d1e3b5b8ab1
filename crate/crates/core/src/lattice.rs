//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (smoothness tests, multiplicities, rational
//! equivalence) reduces to the normal forms in this module. The project-wide
//! conventions are fixed here once:
//!
//! * vectors are rows, matrices act on the right (`x · M`),
//! * Hermite normal form is the row form: row echelon, positive pivots,
//!   entries above a pivot reduced into `[0, pivot)`,
//! * Smith normal form has a nonnegative diagonal with `d1 | d2 | …`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// Input vectors were required to be linearly independent but are not.
    NotIndependent,
    /// Vectors of differing lengths (or against the wrong ambient rank).
    DimensionMismatch,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotIndependent => write!(f, "not independent"),
            LatticeError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    /// Build from row vectors; `cols` must be given explicitly so that the
    /// empty matrix keeps its ambient width.
    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().cloned());
        }
        IntMatrix::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) += term;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.at(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let ai = a * self.cols + c;
            let bi = b * self.cols + c;
            self.entries.swap(ai, bi);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = self.at(r, c).clone();
            *self.at_mut(r, c) = -v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let term = q * self.at(src, c);
            *self.at_mut(dst, c) += term;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let ai = r * self.cols + a;
            let bi = r * self.cols + b;
            self.entries.swap(ai, bi);
        }
    }

    /// col[dst] += q * col[src]
    fn add_scaled_col(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let term = q * self.at(r, src);
            *self.at_mut(r, dst) += term;
        }
    }
}

/// A list of independent integer vectors spanning a saturated sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub ambient_rank: usize,
    pub vectors: Vec<Vec<Int>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot dimension mismatch");
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x * y;
    }
    acc
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Int], m: &IntMatrix) -> Vec<Int> {
    assert_eq!(v.len(), m.rows(), "vec_mat dimension mismatch");
    let mut out = vec![Int::zero(); m.cols()];
    for (r, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for c in 0..m.cols() {
            out[c] += x * m.at(r, c);
        }
    }
    out
}

/// Matrix times column vector (kept as a plain Vec).
pub fn mat_vec(m: &IntMatrix, v: &[Int]) -> Vec<Int> {
    assert_eq!(v.len(), m.cols(), "mat_vec dimension mismatch");
    (0..m.rows()).map(|r| dot(m.row(r), v)).collect()
}

pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Divide out the content; the zero vector is returned unchanged.
pub fn primitivize(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Int], s: &Int) -> Vec<Int> {
    v.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Row Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular, `u·m = h`, `h` in row echelon form
/// with positive pivots and the entries above each pivot reduced into
/// `[0, pivot)`. Zero rows sink to the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0usize;
    for col in 0..h.cols() {
        if pivot_row >= h.rows() {
            break;
        }
        // Reduce rows >= pivot_row in this column to a single nonzero entry.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows() {
                if h.at(r, col).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if h.at(r, col).abs() < h.at(b, col).abs() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                h.swap_rows(b, pivot_row);
                u.swap_rows(b, pivot_row);
            }
            let pivot = h.at(pivot_row, col).clone();
            let mut others = false;
            for r in (pivot_row + 1)..h.rows() {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -(h.at(r, col) / &pivot);
                h.add_scaled_row(r, pivot_row, &q);
                u.add_scaled_row(r, pivot_row, &q);
                if !h.at(r, col).is_zero() {
                    others = true;
                }
            }
            if !others {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h.at(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = -h.at(r, col).div_floor(&pivot);
            h.add_scaled_row(r, pivot_row, &q);
            u.add_scaled_row(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form data with both column transforms tracked.
pub(crate) struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub(crate) fn smith_with_inverse(m: &IntMatrix) -> Smith {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let mut v_inv = IntMatrix::identity(m.cols());

    let n = m.rows().min(m.cols());
    let mut t = 0usize;
    while t < n {
        // Smallest |entry| in the trailing block, ties broken row-then-column.
        let mut best: Option<(usize, usize)> = None;
        for r in t..d.rows() {
            for c in t..d.cols() {
                if d.at(r, c).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((r, c)),
                    Some((br, bc)) => {
                        if d.at(r, c).abs() < d.at(br, bc).abs() {
                            Some((r, c))
                        } else {
                            Some((br, bc))
                        }
                    }
                };
            }
        }
        let Some((r0, c0)) = best else { break };
        d.swap_rows(r0, t);
        u.swap_rows(r0, t);
        d.swap_cols(c0, t);
        v.swap_cols(c0, t);
        v_inv.swap_rows(c0, t);

        let mut dirty = false;
        let pivot = d.at(t, t).clone();
        for r in (t + 1)..d.rows() {
            if d.at(r, t).is_zero() {
                continue;
            }
            let q = -(d.at(r, t) / &pivot);
            d.add_scaled_row(r, t, &q);
            u.add_scaled_row(r, t, &q);
            if !d.at(r, t).is_zero() {
                dirty = true;
            }
        }
        for c in (t + 1)..d.cols() {
            if d.at(t, c).is_zero() {
                continue;
            }
            let q = -(d.at(t, c) / &pivot);
            d.add_scaled_col(c, t, &q);
            v.add_scaled_col(c, t, &q);
            // (I + q e_{t,c})^{-1} = I - q e_{t,c}; acting on the left of
            // v_inv adds -q * row c to row t... inverse op: row_t -= q*row_c.
            let nq = -q;
            v_inv.add_scaled_row(t, c, &nq);
            if !d.at(t, c).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Divisibility sweep: pivot must divide the trailing block.
        let pivot = d.at(t, t).clone();
        let mut fixed = true;
        'scan: for r in (t + 1)..d.rows() {
            for c in (t + 1)..d.cols() {
                if !(d.at(r, c) % &pivot).is_zero() {
                    let one = Int::one();
                    d.add_scaled_row(t, r, &one);
                    u.add_scaled_row(t, r, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d.at(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { d, u, v, v_inv }
}

/// Smith normal form: `(d, u, v)` with `u·m·v = d`, both transforms
/// unimodular, diagonal nonnegative with each entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_with_inverse(m);
    (s.d, s.u, s.v)
}

/// Index of the sublattice spanned by `vs` inside its saturation: the
/// product of the nonzero Smith divisors. Errors if `vs` are dependent.
pub fn lattice_index(vs: &[Vec<Int>]) -> Result<Int, LatticeError> {
    if vs.is_empty() {
        return Ok(Int::one());
    }
    let cols = vs[0].len();
    if vs.iter().any(|v| v.len() != cols) {
        return Err(LatticeError::DimensionMismatch);
    }
    let m = IntMatrix::from_rows(cols, vs);
    let (d, _, _) = smith_normal_form(&m);
    let diag = d.diagonal();
    let nonzero: Vec<&Int> = diag.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.len() < vs.len() {
        return Err(LatticeError::NotIndependent);
    }
    let mut prod = Int::one();
    for x in nonzero {
        prod *= x;
    }
    Ok(prod)
}

/// Basis of the saturation of the span of `vs` (HNF-canonical rows).
pub fn saturate(ambient_rank: usize, vs: &[Vec<Int>]) -> Result<LatticeBasis, LatticeError> {
    if vs.iter().any(|v| v.len() != ambient_rank) {
        return Err(LatticeError::DimensionMismatch);
    }
    if vs.is_empty() {
        return Ok(LatticeBasis { ambient_rank, vectors: Vec::new() });
    }
    let m = IntMatrix::from_rows(ambient_rank, vs);
    let s = smith_with_inverse(&m);
    let r = s.d.diagonal().iter().filter(|x| !x.is_zero()).count();
    // m = u^-1 d v^-1, so the rational row span of m is spanned by the first
    // r rows of v^-1, which are a saturated basis.
    let rows: Vec<Vec<Int>> = (0..r).map(|i| s.v_inv.row(i).to_vec()).collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(ambient_rank, &rows));
    let vectors: Vec<Vec<Int>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    debug_assert!(vectors.iter().all(|v| !is_zero_vec(v)));
    Ok(LatticeBasis { ambient_rank, vectors })
}

/// Decide whether `target` is an integer combination of `generators`.
pub fn in_lattice(generators: &[Vec<Int>], target: &[Int]) -> Result<bool, LatticeError> {
    Ok(solve_combination(generators, target)?.is_some())
}

/// Solve `x · G = target` for integer `x` (rows of `G` are the generators).
pub fn solve_combination(
    generators: &[Vec<Int>],
    target: &[Int],
) -> Result<Option<Vec<Int>>, LatticeError> {
    let cols = target.len();
    if generators.iter().any(|v| v.len() != cols) {
        return Err(LatticeError::DimensionMismatch);
    }
    if generators.is_empty() {
        return Ok(if is_zero_vec(target) { Some(Vec::new()) } else { None });
    }
    let m = IntMatrix::from_rows(cols, generators);
    let (h, u) = hermite_normal_form(&m);
    let mut t = target.to_vec();
    let mut coeffs = vec![Int::zero(); generators.len()];
    for r in 0..h.rows() {
        let Some(p) = (0..cols).find(|&c| !h.at(r, c).is_zero()) else {
            continue;
        };
        if t[p].is_zero() {
            continue;
        }
        let (q, rem) = t[p].div_rem(h.at(r, p));
        if !rem.is_zero() {
            return Ok(None);
        }
        for c in 0..cols {
            let term = &q * h.at(r, c);
            t[c] -= term;
        }
        coeffs[r] = q;
    }
    if !is_zero_vec(&t) {
        return Ok(None);
    }
    // x = coeffs · u
    Ok(Some(vec_mat(&coeffs, &u)))
}

/// Basis of the left kernel `{ y : y·m = 0 }` (saturated by construction).
pub fn row_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let (h, u) = hermite_normal_form(m);
    let mut out = Vec::new();
    for r in 0..h.rows() {
        if is_zero_vec(h.row(r)) {
            out.push(u.row(r).to_vec());
        }
    }
    out
}

/// Basis of the right kernel `{ x : m·x^T = 0 }`.
pub fn kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    row_kernel(&m.transpose())
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows()).filter(|&r| !is_zero_vec(h.row(r))).count()
}

/// Extend a saturated basis to a full unimodular row basis of the ambient
/// lattice; the returned matrix has the input rows first.
pub fn complete_basis(basis: &LatticeBasis) -> IntMatrix {
    let n = basis.ambient_rank;
    let r = basis.vectors.len();
    if r == 0 {
        return IntMatrix::identity(n);
    }
    let m = IntMatrix::from_rows(n, &basis.vectors);
    let s = smith_with_inverse(&m);
    debug_assert!(s.d.diagonal().iter().take(r).all(|x| x.is_one()), "basis not saturated");
    let mut rows = basis.vectors.clone();
    for i in r..n {
        rows.push(s.v_inv.row(i).to_vec());
    }
    let full = IntMatrix::from_rows(n, &rows);
    debug_assert!({
        let (d, _, _) = smith_normal_form(&full);
        d.diagonal().iter().all(|x| x.is_one())
    });
    full
}

/// Invert a unimodular matrix.
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        let x = solve_combination(&m.row_vecs(), &e)
            .expect("dimension")
            .expect("matrix not unimodular");
        rows.push(x);
    }
    IntMatrix::from_rows(n, &rows)
}

/// Matrix `Q` (n × (n−r)) giving coordinates on `Z^n / span(basis)`:
/// the class of a row vector `x` is `x · Q`.
pub fn quotient_matrix(basis: &LatticeBasis) -> IntMatrix {
    let n = basis.ambient_rank;
    let r = basis.vectors.len();
    let full = complete_basis(basis);
    let inv = invert_unimodular(&full);
    let mut q = IntMatrix::zero(n, n - r);
    for row in 0..n {
        for c in r..n {
            *q.at_mut(row, c - r) = inv.at(row, c).clone();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        let rv: Vec<Vec<Int>> = rows.iter().map(|r| int_vec(r)).collect();
        IntMatrix::from_rows(cols, &rv)
    }

    #[test]
    fn hnf_small_example() {
        // [[2,4],[1,3]] has row HNF [[1,1],[0,2]].
        let m = mat(2, &[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, mat(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, _) = hermite_normal_form(&id);
        assert_eq!(h, id);
        let z = IntMatrix::zero(2, 2);
        let (h, _) = hermite_normal_form(&z);
        assert_eq!(h, z);
    }

    #[test]
    fn hnf_unimodular_transform() {
        let m = mat(3, &[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        let (d, _, _) = smith_normal_form(&u);
        assert!(d.diagonal().iter().all(|x| x.is_one()));
    }

    #[test]
    fn snf_small_examples() {
        let m = mat(2, &[&[2, 0], &[0, 3]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(d.diagonal(), int_vec(&[1, 6]));
        assert_eq!(u.mul(&m).mul(&v), d);

        let m = mat(2, &[&[4, 0], &[0, 6]]);
        let (d, _, _) = smith_normal_form(&m);
        assert_eq!(d.diagonal(), int_vec(&[2, 12]));

        let id = IntMatrix::identity(2);
        let (d, _, _) = smith_normal_form(&id);
        assert_eq!(d, id);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = mat(3, &[&[6, 4, 2], &[4, 10, 2], &[2, 2, 8]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!((w[1].clone() % w[0].clone()).is_zero(), "chain broken: {:?}", diag);
            }
        }
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(
            lattice_index(&[int_vec(&[1, 0]), int_vec(&[1, 2])]).unwrap(),
            Int::from(2)
        );
        assert_eq!(
            lattice_index(&[int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap(),
            Int::from(1)
        );
        assert_eq!(lattice_index(&[int_vec(&[1, 1])]).unwrap(), Int::from(1));
        assert_eq!(
            lattice_index(&[int_vec(&[1, 1]), int_vec(&[2, 2])]),
            Err(LatticeError::NotIndependent)
        );
    }

    #[test]
    fn saturate_examples() {
        let b = saturate(2, &[int_vec(&[2, 0])]).unwrap();
        assert_eq!(b.vectors, vec![int_vec(&[1, 0])]);

        let b = saturate(2, &[int_vec(&[2, 0]), int_vec(&[0, 3])]).unwrap();
        assert_eq!(b.vectors, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);

        let b = saturate(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        assert_eq!(b.vectors, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
    }

    #[test]
    fn saturate_idempotent() {
        let vs = [int_vec(&[2, 4, 6]), int_vec(&[0, 10, 4])];
        let b1 = saturate(3, &vs).unwrap();
        let b2 = saturate(3, &b1.vectors).unwrap();
        assert_eq!(b1, b2);
        // Index of the span inside the saturation matches lattice_index.
        let idx = lattice_index(&vs).unwrap();
        let m = IntMatrix::from_rows(3, &vs);
        let (d, _, _) = smith_normal_form(&m);
        let prod: Int = d.diagonal().iter().filter(|x| !x.is_zero()).product();
        assert_eq!(idx, prod);
        assert_eq!(lattice_index(&b1.vectors).unwrap(), Int::one());
    }

    #[test]
    fn in_lattice_examples() {
        assert!(in_lattice(&[int_vec(&[1, 1])], &int_vec(&[2, 2])).unwrap());
        assert!(!in_lattice(&[int_vec(&[2, 0])], &int_vec(&[1, 0])).unwrap());
        assert!(in_lattice(&[int_vec(&[1, 2]), int_vec(&[0, 5])], &int_vec(&[2, 9])).unwrap());
        assert_eq!(
            in_lattice(&[int_vec(&[1, 2])], &int_vec(&[1])),
            Err(LatticeError::DimensionMismatch)
        );
    }

    #[test]
    fn solve_combination_recovers_coeffs() {
        let gens = [int_vec(&[1, 2, 0]), int_vec(&[0, 5, 1])];
        let target = int_vec(&[3, -4, -2]);
        let x = solve_combination(&gens, &target).unwrap().unwrap();
        let m = IntMatrix::from_rows(3, &gens);
        assert_eq!(vec_mat(&x, &m), target);
    }

    #[test]
    fn kernel_is_saturated() {
        let m = mat(3, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = row_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(content(&k[0]), Int::one());
        assert!(is_zero_vec(&vec_mat(&k[0], &m)));
    }

    #[test]
    fn complete_and_quotient() {
        let b = saturate(3, &[int_vec(&[1, 1, 0])]).unwrap();
        let full = complete_basis(&b);
        let (d, _, _) = smith_normal_form(&full);
        assert!(d.diagonal().iter().all(|x| x.is_one()));
        let q = quotient_matrix(&b);
        // The basis vector dies in the quotient.
        assert!(is_zero_vec(&vec_mat(&b.vectors[0], &q)));
        // The quotient map is surjective: its image has index 1.
        let rows: Vec<Vec<Int>> =
            (0..3).map(|i| {
                let mut e = vec![Int::zero(); 3];
                e[i] = Int::one();
                vec_mat(&e, &q)
            }).collect();
        let sat = saturate(2, &rows).unwrap();
        assert_eq!(sat.rank(), 2);
    }
}
