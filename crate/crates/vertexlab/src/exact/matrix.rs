//! Dense matrices over an abstract commutative ring, with exact
//! determinants, pfaffians, kernels, and tensor-product helpers.

use super::scalar::ExactScalar;
use std::fmt;

/// Minimal commutative-ring interface used by the generic linear algebra.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Sum.
    fn add(&self, other: &Self) -> Self;
    /// Difference.
    fn sub(&self, other: &Self) -> Self;
    /// Product.
    fn mul(&self, other: &Self) -> Self;
    /// Additive inverse.
    fn neg(&self) -> Self;
    /// Zero test.
    fn is_zero(&self) -> bool;
}

/// Rings supporting exact division of a known multiple (used by
/// fraction-free elimination, which never performs a non-exact division).
pub trait ExactDiv: Ring {
    /// Divide `self` by `d`, panicking if the quotient does not exist in
    /// the ring.
    fn div_exact(&self, d: &Self) -> Self;
}

impl Ring for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl ExactDiv for ExactScalar {
    fn div_exact(&self, d: &Self) -> Self {
        self.div_ref(d).expect("exact division by zero scalar")
    }
}

/// A dense row-major matrix over a ring.  Square for determinant and
/// pfaffian entry points; rectangular shapes are allowed for the
/// composition and projection steps of the fusion constructions.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R: Ring> {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Row-major entries (`rows * cols` of them).
    pub e: Vec<R>,
}

/// The spec-facing name for a square matrix of exact scalars.
pub type SquareMatrix = Mat<ExactScalar>;

impl<R: Ring> Mat<R> {
    /// Build from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, e: Vec<R>) -> Self {
        assert_eq!(e.len(), rows * cols, "entry count must equal rows*cols");
        Mat { rows, cols, e }
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            e: vec![R::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = R::one();
        }
        m
    }

    /// Entry reference.
    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.e[i * self.cols + j]
    }

    /// Mutable entry reference.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.e[i * self.cols + j]
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = aik.mul(b);
                    let cur = out.at(i, j).add(&t);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        let mut out = vec![R::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    /// Entry-wise sum.
    pub fn madd(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Entry-wise difference.
    pub fn msub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn mscale(&self, k: &R) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(|a| a.mul(k)).collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product (`self ⊗ other`), row-major with `self` as the
    /// most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.at(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.at(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        *out.at_mut(i1 * other.rows + i2, j1 * other.cols + j2) = a.mul(b);
                    }
                }
            }
        }
        out
    }

    /// True iff every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    /// Trace (square matrices).
    pub fn trace(&self) -> R {
        assert_eq!(self.rows, self.cols);
        let mut t = R::zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    /// Map every entry.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect(),
        }
    }

    /// True iff `self + selfᵗ = 0`.
    pub fn is_antisymmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.at(i, j).add(self.at(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl<R: ExactDiv> Mat<R> {
    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting.  Every internal division is exact; a failed division
    /// panics, which would indicate a bug rather than bad input.
    pub fn det_exact(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut m = self.e.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if m[idx(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&p| !m[idx(p, k)].is_zero()) else {
                    return R::zero();
                };
                for j in 0..n {
                    m.swap(idx(k, j), idx(p, j));
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[idx(k, k)]
                        .mul(&m[idx(i, j)])
                        .sub(&m[idx(i, k)].mul(&m[idx(k, j)]));
                    m[idx(i, j)] = t.div_exact(&prev);
                }
                m[idx(i, k)] = R::zero();
            }
            prev = m[idx(k, k)].clone();
        }
        let det = m[idx(n - 1, n - 1)].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }
}

impl Mat<ExactScalar> {
    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(p) = (row..rows).find(|&p| !self.at(p, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..cols {
                    let a = self.at(p, j).clone();
                    let b = self.at(row, j).clone();
                    *self.at_mut(p, j) = b;
                    *self.at_mut(row, j) = a;
                }
            }
            let pivot_inv = self.at(row, col).inv().expect("non-zero pivot");
            for j in col..cols {
                let v = self.at(row, j).mul_ref(&pivot_inv);
                *self.at_mut(row, j) = v;
            }
            for i in 0..rows {
                if i == row || self.at(i, col).is_zero() {
                    continue;
                }
                let f = self.at(i, col).clone();
                for j in col..cols {
                    let v = self.at(i, j).sub_ref(&self.at(row, j).mul_ref(&f));
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![ExactScalar::zero(); self.cols];
            vec[free] = ExactScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                vec[p] = m.at(r, free).neg_ref();
            }
            basis.push(vec);
        }
        basis
    }

    /// Exact inverse; panics on a singular matrix (callers check context).
    pub fn inverse(&self) -> Result<Self, super::scalar::ExactError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = ExactScalar::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(super::scalar::ExactError::DivisionByZero);
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Ok(out)
    }

    /// Pfaffian of an antisymmetric matrix with the sign convention
    /// `pf([[0, a], [−a, 0]]) = a`; satisfies `pf(M)² = det(M)`.
    ///
    /// Uses combinatorial expansion up to dimension 8 and skew-symmetric
    /// (Parlett–Reid-style) elimination beyond.
    pub fn pfaffian(&self) -> Result<ExactScalar, String> {
        check_pfaffian_input(self)?;
        if self.rows <= 8 {
            return Ok(pfaffian_expand_unchecked(self));
        }
        Ok(pfaffian_eliminate(self))
    }
}

fn check_pfaffian_input<R: Ring>(m: &Mat<R>) -> Result<(), String> {
    if m.rows != m.cols || m.rows % 2 != 0 {
        return Err("pfaffian requires an even-dimensional square matrix".into());
    }
    if !m.is_antisymmetric() {
        return Err("pfaffian requires an antisymmetric matrix".into());
    }
    Ok(())
}

/// Pfaffian by recursive expansion along the first row — valid over any
/// commutative ring; intended for dimensions ≤ 12.
pub fn pfaffian_expand<R: Ring>(m: &Mat<R>) -> Result<R, String> {
    check_pfaffian_input(m)?;
    if m.rows > 12 {
        return Err("combinatorial pfaffian limited to dimension 12".into());
    }
    Ok(pfaffian_expand_unchecked(m))
}

fn pfaffian_expand_unchecked<R: Ring>(m: &Mat<R>) -> R {
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    let mut acc = R::zero();
    for j in 1..n {
        let a = m.at(0, j);
        if a.is_zero() {
            continue;
        }
        // Delete rows/columns 0 and j.
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let mut sub = Mat::zeros(n - 2, n - 2);
        for (r, &i1) in keep.iter().enumerate() {
            for (c, &j1) in keep.iter().enumerate() {
                *sub.at_mut(r, c) = m.at(i1, j1).clone();
            }
        }
        let term = a.mul(&pfaffian_expand_unchecked(&sub));
        // Sign (−1)^{j−1} for expansion entry (0, j).
        acc = if j % 2 == 1 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Pfaffian by congruence elimination over the scalar field.
fn pfaffian_eliminate(m: &Mat<ExactScalar>) -> ExactScalar {
    let n = m.rows;
    let mut a = m.clone();
    let mut pf = ExactScalar::one();
    let mut k = 0;
    while k < n {
        // Ensure a non-zero entry at (k, k+1); swapping rows and matching
        // columns multiplies the pfaffian by −1.
        if a.at(k, k + 1).is_zero() {
            let Some(p) = (k + 2..n).find(|&p| !a.at(k, p).is_zero()) else {
                return ExactScalar::zero();
            };
            swap_row_col(&mut a, k + 1, p);
            pf = pf.neg_ref();
        }
        let pivot = a.at(k, k + 1).clone();
        pf = pf.mul_ref(&pivot);
        let pivot_inv = pivot.inv().expect("non-zero pivot");
        // Clear row k beyond column k+1 using row/column k+1.
        for j in k + 2..n {
            let f = a.at(k, j).mul_ref(&pivot_inv).neg_ref();
            if f.is_zero() {
                continue;
            }
            add_row_col(&mut a, j, k + 1, &f);
        }
        // Clear row k+1 beyond column k+1 using row/column k.
        for j in k + 2..n {
            let f = a.at(k + 1, j).mul_ref(&pivot_inv);
            if f.is_zero() {
                continue;
            }
            add_row_col(&mut a, j, k, &f);
        }
        k += 2;
    }
    pf
}

fn swap_row_col(a: &mut Mat<ExactScalar>, i: usize, j: usize) {
    let n = a.cols;
    for c in 0..n {
        let x = a.at(i, c).clone();
        let y = a.at(j, c).clone();
        *a.at_mut(i, c) = y;
        *a.at_mut(j, c) = x;
    }
    for r in 0..n {
        let x = a.at(r, i).clone();
        let y = a.at(r, j).clone();
        *a.at_mut(r, i) = y;
        *a.at_mut(r, j) = x;
    }
}

/// Congruence update: row_i += f·row_j and col_i += f·col_j.
fn add_row_col(a: &mut Mat<ExactScalar>, i: usize, j: usize, f: &ExactScalar) {
    let n = a.cols;
    for c in 0..n {
        let v = a.at(i, c).add_ref(&a.at(j, c).mul_ref(f));
        *a.at_mut(i, c) = v;
    }
    for r in 0..n {
        let v = a.at(r, i).add_ref(&a.at(r, j).mul_ref(f));
        *a.at_mut(r, i) = v;
    }
}

/// Apply a local operator `op` acting on the tensor factors `sites` (each
/// with dimension `dims[s]`, factor 0 most significant) to the dense vector
/// `v` on the full tensor product.
pub fn apply_local_to_vec<R: Ring>(
    op: &Mat<R>,
    dims: &[usize],
    sites: &[usize],
    v: &[R],
) -> Vec<R> {
    let total: usize = dims.iter().product();
    assert_eq!(v.len(), total, "vector length must match tensor dimensions");
    let ld: usize = sites.iter().map(|&s| dims[s]).product();
    assert_eq!(op.rows, ld, "operator must match the local dimension");
    assert_eq!(op.cols, ld, "operator must be square");
    // Stride of each full-tensor factor.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    // Offset within the full index contributed by each local configuration.
    let mut local_offsets = vec![0usize; ld];
    for (lidx, off) in local_offsets.iter_mut().enumerate() {
        let mut rem = lidx;
        let mut acc = 0;
        for &s in sites {
            // Local index is big-endian over `sites` in the given order.
            let later: usize = sites
                .iter()
                .skip_while(|&&t| t != s)
                .skip(1)
                .map(|&t| dims[t])
                .product();
            let digit = rem / later;
            rem %= later;
            acc += digit * strides[s];
        }
        *off = acc;
    }
    // Sparse representation of the operator per column.
    let mut col_entries: Vec<Vec<(usize, &R)>> = vec![Vec::new(); ld];
    for r in 0..ld {
        for c in 0..ld {
            let x = op.at(r, c);
            if !x.is_zero() {
                col_entries[c].push((r, x));
            }
        }
    }
    let mut out = vec![R::zero(); total];
    for (idx, val) in v.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        // Extract the local column index and the base offset.
        let mut lc = 0usize;
        let mut base = idx;
        for &s in sites {
            let digit = (idx / strides[s]) % dims[s];
            lc = lc * dims[s] + digit;
            base -= digit * strides[s];
        }
        for &(lr, x) in &col_entries[lc] {
            let o = base + local_offsets[lr];
            out[o] = out[o].add(&x.mul(val));
        }
    }
    out
}

/// Embed a local operator on the listed tensor factors into a full dense
/// matrix on the whole product space.
pub fn embed_op<R: Ring>(op: &Mat<R>, dims: &[usize], sites: &[usize]) -> Mat<R> {
    let total: usize = dims.iter().product();
    let mut out = Mat::zeros(total, total);
    for col in 0..total {
        let mut unit = vec![R::zero(); total];
        unit[col] = R::one();
        let image = apply_local_to_vec(op, dims, sites, &unit);
        for (row, x) in image.into_iter().enumerate() {
            if !x.is_zero() {
                *out.at_mut(row, col) = x;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rand_scalar, ExactScalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_mat(rng: &mut ChaCha8Rng, n: usize) -> Mat<ExactScalar> {
        let e = (0..n * n).map(|_| rand_scalar(rng, 20)).collect();
        Mat::from_entries(n, n, e)
    }

    #[test]
    fn det_of_identity_and_swap() {
        assert_eq!(
            Mat::<ExactScalar>::identity(3).det_exact(),
            ExactScalar::one()
        );
        let swap = Mat::from_entries(
            2,
            2,
            vec![
                ExactScalar::zero(),
                ExactScalar::one(),
                ExactScalar::one(),
                ExactScalar::zero(),
            ],
        );
        assert_eq!(swap.det_exact(), ExactScalar::from_int(-1));
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = rand_mat(&mut rng, 4);
            let b = rand_mat(&mut rng, 4);
            assert_eq!(
                a.matmul(&b).det_exact(),
                a.det_exact().mul_ref(&b.det_exact())
            );
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = rand_mat(&mut rng, 4);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(4));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // Rows (1,2,3) and (2,4,6) are dependent.
        let m = Mat::from_entries(
            2,
            3,
            vec![1, 2, 3, 2, 4, 6]
                .into_iter()
                .map(ExactScalar::from_int)
                .collect(),
        );
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.matvec(v).iter().all(|x| x.is_zero()));
        }
    }

    fn antisym(rng: &mut ChaCha8Rng, n: usize) -> Mat<ExactScalar> {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = rand_scalar(rng, 20);
                *m.at_mut(i, j) = x.clone();
                *m.at_mut(j, i) = x.neg_ref();
            }
        }
        m
    }

    #[test]
    fn pfaffian_two_by_two_convention() {
        let a = ExactScalar::ratio(7, 3);
        let m = Mat::from_entries(
            2,
            2,
            vec![
                ExactScalar::zero(),
                a.clone(),
                a.neg_ref(),
                ExactScalar::zero(),
            ],
        );
        assert_eq!(m.pfaffian().unwrap(), a);
    }

    #[test]
    fn pfaffian_four_by_four_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = antisym(&mut rng, 4);
        let expect = m
            .at(0, 1)
            .mul_ref(m.at(2, 3))
            .sub_ref(&m.at(0, 2).mul_ref(m.at(1, 3)))
            .add_ref(&m.at(0, 3).mul_ref(m.at(1, 2)));
        assert_eq!(m.pfaffian().unwrap(), expect);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [2usize, 4, 6] {
            let m = antisym(&mut rng, n);
            let pf = m.pfaffian().unwrap();
            assert_eq!(pf.mul_ref(&pf), m.det_exact());
        }
    }

    #[test]
    fn pfaffian_elimination_matches_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let m = antisym(&mut rng, 10);
        let pf = m.pfaffian().unwrap();
        assert_eq!(pf.mul_ref(&pf), m.det_exact());
        // Congruence invariance: pf(Mᵗ A M) = det(M) pf(A).
        let t = rand_mat(&mut rng, 10);
        let conj = t.transpose().matmul(&m).matmul(&t);
        assert_eq!(
            conj.pfaffian().unwrap(),
            t.det_exact().mul_ref(&pf)
        );
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let m = Mat::<ExactScalar>::identity(2);
        assert!(m.pfaffian().is_err());
        let odd = Mat::<ExactScalar>::zeros(3, 3);
        assert!(odd.pfaffian().is_err());
    }

    #[test]
    fn local_application_matches_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // Two-site operator on factors (0, 2) of a 2 ⊗ 3 ⊗ 2 product.
        let op = rand_mat(&mut rng, 4);
        let dims = [2usize, 3, 2];
        let full = embed_op(&op, &dims, &[0, 2]);
        // Compare against an independent dense construction.
        let mut expect = Mat::zeros(12, 12);
        for r0 in 0..2 {
            for r1 in 0..3 {
                for r2 in 0..2 {
                    for c0 in 0..2 {
                        for c2 in 0..2 {
                            let v = op.at(r0 * 2 + r2, c0 * 2 + c2).clone();
                            let row = (r0 * 3 + r1) * 2 + r2;
                            let col = (c0 * 3 + r1) * 2 + c2;
                            *expect.at_mut(row, col) = v;
                        }
                    }
                }
            }
        }
        assert_eq!(full, expect);
    }
}
