//! Local data of the six-, ten-, and nineteen-vertex models: R-matrices,
//! fusion projectors and basis changes, boundary vectors, and the local
//! relation checks (Yang–Baxter, inversion, crossing, boundary Yang–Baxter
//! and fish equations).
//!
//! Basis conventions (fixed throughout the crate):
//! * spin-1/2 space `C²` ordered `{↑, ↓}`;
//! * spin-1 space `C³` ordered `{⇑, 0, ⇓}`;
//! * the 6-dimensional mixed space ordered `{↑⇑, ↑0, ↑⇓, ↓⇑, ↓0, ↓⇓}`;
//! * the 9-dimensional space ordered `{⇑⇑, ⇑0, ⇑⇓, 0⇑, 00, 0⇓, ⇓⇑, ⇓0, ⇓⇓}`.

use crate::exact::{
    apply_local_to_vec, bracket, embed_op, ExactScalar, Mat, Rational, Ring,
};
use num::{One, Zero};

/// Errors from model-parameter validation and boundary-vector construction.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum VertexError {
    /// `q ∈ {0, ±1}` is outside the generic regime handled exactly.
    #[error("parameter q must avoid 0 and ±1 (root-of-unity points are reached by limits only)")]
    DegenerateQ,
    /// The spin-1/2 boundary vector needs `√q`, supplied as `q = s²`.
    #[error("half-parameter required")]
    HalfParameterRequired,
    /// Fused and tabulated R-matrix constructions disagree.
    #[error("internal consistency error: fused and tabulated R-matrices disagree")]
    FusedTableMismatch,
}

/// Which R-matrix: spin (1/2,1/2), (1/2,1), or (1,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RKind {
    /// 4×4 six-vertex R-matrix.
    K11,
    /// 6×6 ten-vertex R-matrix.
    K12,
    /// 9×9 nineteen-vertex R-matrix.
    K22,
}

impl RKind {
    /// Local dimensions `(aux, quantum)` of the two factors.
    pub fn dims(self) -> (usize, usize) {
        match self {
            RKind::K11 => (2, 2),
            RKind::K12 => (2, 3),
            RKind::K22 => (3, 3),
        }
    }
}

/// The model parameters: a generic rational `q`, optionally presented as
/// `q = s²` so that half-integer powers of `q` exist, and the extension
/// constant `r² = [q][q²]` used by the ten-vertex weights.
#[derive(Clone, Debug)]
pub struct ModelParams {
    /// The deformation parameter.
    pub q: Rational,
    /// Optional half-parameter with `q = s²`.
    pub s: Option<Rational>,
    /// The rational value of `r² = [q][q²]`.
    pub ext: Rational,
}

impl ModelParams {
    /// Build from a rational `q` outside `{0, ±1}`.
    pub fn new(q: Rational) -> Result<Self, VertexError> {
        if q.is_zero() || q == Rational::one() || q == -Rational::one() {
            return Err(VertexError::DegenerateQ);
        }
        let br = |x: &Rational| x - Rational::one() / x;
        let q2 = &q * &q;
        let ext = br(&q) * br(&q2);
        Ok(ModelParams { q, s: None, ext })
    }

    /// Build from a half-parameter `s` with `q = s²`.
    pub fn from_s(s: Rational) -> Result<Self, VertexError> {
        let q = &s * &s;
        let mut p = Self::new(q)?;
        p.s = Some(s);
        Ok(p)
    }

    /// Embed a rational into the scalar ring, carrying this context's `r²`.
    pub fn sc(&self, x: Rational) -> ExactScalar {
        let mut v = ExactScalar::from_rational(x);
        v.ext = Some(self.ext.clone());
        v
    }

    /// The scalar `q` itself.
    pub fn qs(&self) -> ExactScalar {
        self.sc(self.q.clone())
    }

    /// The scalar `q^k`.
    pub fn q_pow(&self, k: i64) -> ExactScalar {
        self.qs().pow(k)
    }

    /// The formal square root `r` with `r² = [q][q²]`.
    pub fn r_elem(&self) -> ExactScalar {
        ExactScalar::r(self.ext.clone())
    }

    /// The bracket `[z] = z − z⁻¹`.
    pub fn br(&self, z: &ExactScalar) -> ExactScalar {
        bracket(z).expect("bracket of non-unit")
    }

    /// The bracket `[q^k z]`.
    pub fn brq(&self, k: i64, z: &ExactScalar) -> ExactScalar {
        self.br(&self.q_pow(k).mul_ref(z))
    }

    /// The bracket `[q^k]`.
    pub fn brqk(&self, k: i64) -> ExactScalar {
        self.br(&self.q_pow(k))
    }

    /// The anisotropy `x = q + q⁻¹`.
    pub fn x(&self) -> Rational {
        &self.q + Rational::one() / &self.q
    }

    /// The half-parameter `s = √q` as a scalar, if available.
    pub fn s_scalar(&self) -> Result<ExactScalar, VertexError> {
        self.s
            .clone()
            .map(|s| self.sc(s))
            .ok_or(VertexError::HalfParameterRequired)
    }
}

// ---------------------------------------------------------------------------
// Constant matrices of the fusion machinery.
// ---------------------------------------------------------------------------

fn half() -> ExactScalar {
    ExactScalar::ratio(1, 2)
}

/// Symmetrizer on `C² ⊗ C²`.
pub fn p_plus() -> Mat<ExactScalar> {
    let h = half();
    let o = ExactScalar::one();
    let z = ExactScalar::zero();
    Mat::from_entries(
        4,
        4,
        vec![
            o.clone(), z.clone(), z.clone(), z.clone(),
            z.clone(), h.clone(), h.clone(), z.clone(),
            z.clone(), h.clone(), h.clone(), z.clone(),
            z.clone(), z.clone(), z.clone(), o,
        ],
    )
}

/// Antisymmetrizer on `C² ⊗ C²`.
pub fn p_minus() -> Mat<ExactScalar> {
    Mat::<ExactScalar>::identity(4).msub(&p_plus())
}

/// The diagonal factor `B = diag([q²], 2[q], 2[q], [q²])` with
/// `R^(1,1)(q) = B·P⁺`.
pub fn b_mat(params: &ModelParams) -> Mat<ExactScalar> {
    let b1 = params.brqk(2);
    let b2 = params.brqk(1).scale(&Rational::from_integer(2.into()));
    let mut m = Mat::zeros(4, 4);
    *m.at_mut(0, 0) = b1.clone();
    *m.at_mut(1, 1) = b2.clone();
    *m.at_mut(2, 2) = b2;
    *m.at_mut(3, 3) = b1;
    m
}

/// Basis change `U` sending the symmetric subspace of `C² ⊗ C²` onto the
/// first three coordinates, with `α = r / (2[q])`.
pub fn u_mat(params: &ModelParams) -> Mat<ExactScalar> {
    let alpha = params
        .r_elem()
        .div_ref(&params.brqk(1).scale(&Rational::from_integer(2.into())))
        .expect("non-zero [q]");
    let o = ExactScalar::one();
    let z = ExactScalar::zero();
    Mat::from_entries(
        4,
        4,
        vec![
            o, z.clone(), z.clone(), z.clone(),
            z.clone(), alpha.clone(), alpha.clone(), z.clone(),
            z.clone(), z.clone(), z.clone(), ExactScalar::one(),
            z.clone(), alpha.clone(), alpha.neg_ref(), z,
        ],
    )
}

/// The inverse of [`u_mat`].
pub fn u_inv(params: &ModelParams) -> Mat<ExactScalar> {
    u_mat(params).inverse().expect("U is invertible")
}

/// The companion basis change `V = (U⁻¹)ᵗ`, explicitly with
/// `α′ = r / [q²]`; the equality with `(U⁻¹)ᵗ` is asserted.
pub fn v_mat(params: &ModelParams) -> Mat<ExactScalar> {
    let alpha_p = params
        .r_elem()
        .div_ref(&params.brqk(2))
        .expect("non-zero [q²]");
    let o = ExactScalar::one();
    let z = ExactScalar::zero();
    let v = Mat::from_entries(
        4,
        4,
        vec![
            o, z.clone(), z.clone(), z.clone(),
            z.clone(), alpha_p.clone(), alpha_p.clone(), z.clone(),
            z.clone(), z.clone(), z.clone(), ExactScalar::one(),
            z.clone(), alpha_p.clone(), alpha_p.neg_ref(), z,
        ],
    );
    debug_assert_eq!(v, u_inv(params).transpose());
    v
}

/// The 3×4 truncation keeping the first three coordinates (the image of
/// the symmetric subspace after the `U` rotation).
pub fn q_proj() -> Mat<ExactScalar> {
    let mut m = Mat::zeros(3, 4);
    *m.at_mut(0, 0) = ExactScalar::one();
    *m.at_mut(1, 1) = ExactScalar::one();
    *m.at_mut(2, 2) = ExactScalar::one();
    m
}

/// Permutation operator on `C^d ⊗ C^d`.
pub fn perm(d: usize) -> Mat<ExactScalar> {
    let mut m = Mat::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            *m.at_mut(b * d + a, a * d + b) = ExactScalar::one();
        }
    }
    m
}

/// Pauli matrix `σ² = [[0, −i], [i, 0]]`.
pub fn sigma2() -> Mat<ExactScalar> {
    let i = ExactScalar::i();
    let z = ExactScalar::zero();
    Mat::from_entries(2, 2, vec![z.clone(), i.neg_ref(), i, z])
}

/// Pauli matrix `σ³ = diag(1, −1)`.
pub fn sigma3() -> Mat<ExactScalar> {
    let z = ExactScalar::zero();
    Mat::from_entries(
        2,
        2,
        vec![ExactScalar::one(), z.clone(), z, ExactScalar::from_int(-1)],
    )
}

// ---------------------------------------------------------------------------
// R-matrices.
// ---------------------------------------------------------------------------

/// Six-vertex R-matrix on `C² ⊗ C²`.
pub fn r11(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    let a = params.brq(1, z);
    let b = params.br(z);
    let c = params.brqk(1);
    let zero = ExactScalar::zero();
    Mat::from_entries(
        4,
        4,
        vec![
            a.clone(), zero.clone(), zero.clone(), zero.clone(),
            zero.clone(), b.clone(), c.clone(), zero.clone(),
            zero.clone(), c, b, zero.clone(),
            zero.clone(), zero.clone(), zero.clone(), a,
        ],
    )
}

/// Ten-vertex R-matrix on `C² ⊗ C³` (tabulated closed form).
pub fn r12(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    let mut m = Mat::zeros(6, 6);
    let diag = [
        params.brq(2, z),
        params.brq(1, z),
        params.br(z),
        params.br(z),
        params.brq(1, z),
        params.brq(2, z),
    ];
    for (i, v) in diag.into_iter().enumerate() {
        *m.at_mut(i, i) = v;
    }
    let r = params.r_elem();
    for (i, j) in [(1, 3), (2, 4), (3, 1), (4, 2)] {
        *m.at_mut(i, j) = r.clone();
    }
    m
}

/// Nineteen-vertex R-matrix on `C³ ⊗ C³` (tabulated closed form), written
/// generically over a bracket evaluator so the same table also serves the
/// Laurent-polynomial transfer-matrix construction.
pub fn r22_generic<R: Ring>(br: impl Fn(i64) -> R, c_q: R, c_q2: R) -> Mat<R> {
    // br(k) must return the bracket [q^k z]; c_q = [q], c_q2 = [q²].
    let p1 = br(1).mul(&br(2));
    let p2 = br(0).mul(&br(1));
    let p3 = c_q2.mul(&br(1));
    let p4 = br(-1).mul(&br(0));
    let p5 = c_q2.mul(&br(0));
    let p6 = c_q.mul(&c_q2);
    let p7 = br(0).mul(&br(1)).add(&c_q.mul(&c_q2));
    let mut m = Mat::zeros(9, 9);
    let entries: [(usize, usize, &R); 19] = [
        (0, 0, &p1),
        (1, 1, &p2),
        (1, 3, &p3),
        (2, 2, &p4),
        (2, 4, &p5),
        (2, 6, &p6),
        (3, 1, &p3),
        (3, 3, &p2),
        (4, 2, &p5),
        (4, 4, &p7),
        (4, 6, &p5),
        (5, 5, &p2),
        (5, 7, &p3),
        (6, 2, &p6),
        (6, 4, &p5),
        (6, 6, &p4),
        (7, 5, &p3),
        (7, 7, &p2),
        (8, 8, &p1),
    ];
    for (i, j, v) in entries {
        *m.at_mut(i, j) = v.clone();
    }
    m
}

/// Nineteen-vertex R-matrix on `C³ ⊗ C³` over exact scalars.
pub fn r22(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    r22_generic(
        |k| params.brq(k, z),
        params.brqk(1),
        params.brqk(2),
    )
}

/// Ten-vertex R-matrix from six-vertex fusion:
/// `[qz]·R_{1(23)}(z) = U₂₃ R₁₂(z) R₁₃(qz) P⁺₂₃ U₂₃⁻¹`, projected on the
/// first three coordinates of the rotated pair.
pub fn r12_fused(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    let dims = [2usize, 2, 2];
    let u23 = embed_op(&u_mat(params), &dims, &[1, 2]);
    let u23_inv = embed_op(&u_inv(params), &dims, &[1, 2]);
    let pp23 = embed_op(&p_plus(), &dims, &[1, 2]);
    let r_a = embed_op(&r11(z, params), &dims, &[0, 1]);
    let qz = params.q_pow(1).mul_ref(z);
    let r_b = embed_op(&r11(&qz, params), &dims, &[0, 2]);
    let m = u23
        .matmul(&r_a)
        .matmul(&r_b)
        .matmul(&pp23)
        .matmul(&u23_inv);
    let proj = Mat::<ExactScalar>::identity(2).kron(&q_proj());
    let scale = params
        .brq(1, z)
        .inv()
        .expect("generic spectral point avoids [qz] = 0");
    proj.matmul(&m).matmul(&proj.transpose()).mscale(&scale)
}

/// The companion form of the fused ten-vertex R-matrix,
/// `[qz]·R_{1(23)}(z) = V₂₃ P⁺₂₃ R₁₃(qz) R₁₂(z) V₂₃⁻¹`.
pub fn r12_fused_alt(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    let dims = [2usize, 2, 2];
    let v23 = embed_op(&v_mat(params), &dims, &[1, 2]);
    let v23_inv = embed_op(
        &v_mat(params).inverse().expect("V is invertible"),
        &dims,
        &[1, 2],
    );
    let pp23 = embed_op(&p_plus(), &dims, &[1, 2]);
    let r_a = embed_op(&r11(z, params), &dims, &[0, 1]);
    let qz = params.q_pow(1).mul_ref(z);
    let r_b = embed_op(&r11(&qz, params), &dims, &[0, 2]);
    let m = v23
        .matmul(&pp23)
        .matmul(&r_b)
        .matmul(&r_a)
        .matmul(&v23_inv);
    let proj = Mat::<ExactScalar>::identity(2).kron(&q_proj());
    let scale = params
        .brq(1, z)
        .inv()
        .expect("generic spectral point avoids [qz] = 0");
    proj.matmul(&m).matmul(&proj.transpose()).mscale(&scale)
}

/// Nineteen-vertex R-matrix from ten-vertex fusion:
/// `R_{(12)3}(z) = Q₁₂ U₁₂ R_{2,3}(z/q) R_{1,3}(z) P⁺₁₂ U₁₂⁻¹ Qᵗ₁₂`.
pub fn r22_fused(z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    let dims = [2usize, 2, 3];
    let u12 = embed_op(&u_mat(params), &dims, &[0, 1]);
    let u12_inv = embed_op(&u_inv(params), &dims, &[0, 1]);
    let pp12 = embed_op(&p_plus(), &dims, &[0, 1]);
    let z_over_q = z.div_ref(&params.qs()).expect("non-zero q");
    let r_a = embed_op(&r12(&z_over_q, params), &dims, &[1, 2]);
    let r_b = embed_op(&r12(z, params), &dims, &[0, 2]);
    let m = u12
        .matmul(&r_a)
        .matmul(&r_b)
        .matmul(&pp12)
        .matmul(&u12_inv);
    let proj = q_proj().kron(&Mat::<ExactScalar>::identity(3));
    // No scalar prefactor is needed here: the normalized 6×6 building blocks
    // already absorb it, together with the inner pair projection.
    proj.matmul(&m).matmul(&proj.transpose())
}

/// Build an R-matrix; the fused kinds are constructed both from the
/// closed-form tables and the fusion formulas, and the two must agree.
pub fn build_r(
    kind: RKind,
    z: &ExactScalar,
    params: &ModelParams,
) -> Result<Mat<ExactScalar>, VertexError> {
    match kind {
        RKind::K11 => Ok(r11(z, params)),
        RKind::K12 => {
            let table = r12(z, params);
            if r12_fused(z, params) != table {
                return Err(VertexError::FusedTableMismatch);
            }
            Ok(table)
        }
        RKind::K22 => {
            let table = r22(z, params);
            if r22_fused(z, params) != table {
                return Err(VertexError::FusedTableMismatch);
            }
            Ok(table)
        }
    }
}

/// R-matrix of mixed kind `(m, n) ∈ {1,2}²` from the tabulated forms, with
/// the `(2,1)` case obtained by conjugating the `(1,2)` case with the flip
/// of tensor factors.
pub fn r_mixed(m: u8, n: u8, z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    match (m, n) {
        (1, 1) => r11(z, params),
        (1, 2) => r12(z, params),
        (2, 2) => r22(z, params),
        (2, 1) => {
            // Swap the roles of the two factors: R^(2,1)(z) = P R^(1,2)(z/q) P
            // with P the flip C²⊗C³ → C³⊗C².  The shift by q⁻¹ keeps every
            // mixed-spin Yang–Baxter equation with unshifted arguments valid.
            let zq = z.div_ref(&params.qs()).expect("non-zero q");
            let r = r12(&zq, params);
            let mut flip = Mat::zeros(6, 6);
            for a in 0..2 {
                for b in 0..3 {
                    *flip.at_mut(b * 2 + a, a * 3 + b) = ExactScalar::one();
                }
            }
            flip.matmul(&r).matmul(&flip.transpose())
        }
        _ => panic!("spin labels must be 1 or 2"),
    }
}

/// The braided matrix `Ř = P·R` on `C^d ⊗ C^d`.
pub fn rcheck(kind: RKind, z: &ExactScalar, params: &ModelParams) -> Mat<ExactScalar> {
    match kind {
        RKind::K11 => perm(2).matmul(&r11(z, params)),
        RKind::K22 => perm(3).matmul(&r22(z, params)),
        RKind::K12 => panic!("braiding needs equal factors"),
    }
}

// ---------------------------------------------------------------------------
// Boundary vectors.
// ---------------------------------------------------------------------------

/// Integrable boundary (U-turn) vector.
///
/// * model 1 (`C² ⊗ C²`): `χ⁽¹⁾(z) = [√q z b]|↑↓⟩ + [√q z/b]|↓↑⟩`;
/// * model 2 (`C³ ⊗ C³`): `χ⁽²⁾(z) = [bz][bqz]|⇑⇓⟩ + [qz/b][bqz]|00⟩ +
///   [z/b][qz/b]|⇓⇑⟩`.
pub fn boundary_vector(
    model: u8,
    z: &ExactScalar,
    b: &ExactScalar,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, VertexError> {
    match model {
        1 => {
            let s = params.s_scalar()?;
            let mut v = vec![ExactScalar::zero(); 4];
            v[1] = params.br(&s.mul_ref(z).mul_ref(b));
            v[2] = params.br(
                &s.mul_ref(z)
                    .div_ref(b)
                    .expect("non-zero boundary parameter"),
            );
            Ok(v)
        }
        2 => {
            let bz = b.mul_ref(z);
            let bqz = b.mul_ref(&params.qs()).mul_ref(z);
            let z_over_b = z.div_ref(b).expect("non-zero boundary parameter");
            let qz_over_b = params.qs().mul_ref(&z_over_b);
            let mut v = vec![ExactScalar::zero(); 9];
            v[2] = params.br(&bz).mul_ref(&params.br(&bqz));
            v[4] = params.br(&qz_over_b).mul_ref(&params.br(&bqz));
            v[6] = params.br(&z_over_b).mul_ref(&params.br(&qz_over_b));
            Ok(v)
        }
        _ => panic!("boundary model must be 1 or 2"),
    }
}

/// Build `χ⁽²⁾(z)` from two `χ⁽¹⁾` factors by fusion:
/// `χ⁽²⁾(z) = (1/[z²]) (Q⊗Q) V₁₂ U₃₄ P⁺₁₂ P⁺₃₄ Ř₂₃(z²)
/// (χ⁽¹⁾(√q z) ⊗ χ⁽¹⁾(z/√q))`.
pub fn boundary_vector_fused(
    z: &ExactScalar,
    b: &ExactScalar,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, VertexError> {
    let s = params.s_scalar()?;
    let dims = [2usize, 2, 2, 2];
    let chi_hi = boundary_vector(1, &s.mul_ref(z), b, params)?;
    let chi_lo = boundary_vector(
        1,
        &z.div_ref(&s).expect("non-zero half-parameter"),
        b,
        params,
    )?;
    let mut v = vec![ExactScalar::zero(); 16];
    for (i, a) in chi_hi.iter().enumerate() {
        for (j, c) in chi_lo.iter().enumerate() {
            v[i * 4 + j] = a.mul_ref(c);
        }
    }
    let z2 = z.mul_ref(z);
    let v1 = apply_local_to_vec(&rcheck(RKind::K11, &z2, params), &dims, &[1, 2], &v);
    let v2 = apply_local_to_vec(&p_plus(), &dims, &[0, 1], &v1);
    let v3 = apply_local_to_vec(&p_plus(), &dims, &[2, 3], &v2);
    let v4 = apply_local_to_vec(&v_mat(params), &dims, &[0, 1], &v3);
    let v5 = apply_local_to_vec(&u_mat(params), &dims, &[2, 3], &v4);
    let proj = q_proj().kron(&q_proj());
    let out = proj.matvec(&v5);
    let scale = params.br(&z2).inv().expect("generic point avoids [z²] = 0");
    Ok(out.iter().map(|x| x.mul_ref(&scale)).collect())
}

// ---------------------------------------------------------------------------
// Local relation checks.
// ---------------------------------------------------------------------------

/// Yang–Baxter equation on `V_m ⊗ V_n ⊗ V_p`:
/// `R₁₂(z/w) R₁₃(z) R₂₃(w) = R₂₃(w) R₁₃(z) R₁₂(z/w)` — exactly.
pub fn check_yang_baxter(
    m: u8,
    n: u8,
    p: u8,
    z: &ExactScalar,
    w: &ExactScalar,
    params: &ModelParams,
) -> bool {
    let dim = |k: u8| if k == 1 { 2usize } else { 3 };
    let dims = [dim(m), dim(n), dim(p)];
    let zw = z.div_ref(w).expect("non-zero spectral parameters");
    let r12m = embed_op(&r_mixed(m, n, &zw, params), &dims, &[0, 1]);
    let r13m = embed_op(&r_mixed(m, p, z, params), &dims, &[0, 2]);
    let r23m = embed_op(&r_mixed(n, p, w, params), &dims, &[1, 2]);
    let lhs = r12m.matmul(&r13m).matmul(&r23m);
    let rhs = r23m.matmul(&r13m).matmul(&r12m);
    lhs == rhs
}

/// Inversion relation `R^(1,1)(z) R^(1,1)(1/z) = [qz][q/z]·1` and crossing
/// symmetry `R^(1,2)(z)^{t₂} = −(σ²⊗1) R^(1,2)(q⁻²z⁻¹) (σ²⊗1)`.
pub fn check_inversion_crossing(z: &ExactScalar, params: &ModelParams) -> bool {
    let zi = z.inv().expect("invertible spectral parameter");
    let prod = r11(z, params).matmul(&r11(&zi, params));
    let scale = params.brq(1, z).mul_ref(&params.brq(1, &zi));
    if prod != Mat::<ExactScalar>::identity(4).mscale(&scale) {
        return false;
    }
    // Partial transpose on the spin-1 factor.
    let r = r12(z, params);
    let mut t2 = Mat::zeros(6, 6);
    for a in 0..2 {
        for b in 0..3 {
            for c in 0..2 {
                for d in 0..3 {
                    *t2.at_mut(a * 3 + b, c * 3 + d) = r.at(a * 3 + d, c * 3 + b).clone();
                }
            }
        }
    }
    let arg = params
        .q_pow(-2)
        .mul_ref(&z.inv().expect("invertible spectral parameter"));
    let conj = sigma2().kron(&Mat::<ExactScalar>::identity(3));
    let rhs = conj
        .matmul(&r12(&arg, params))
        .matmul(&conj)
        .mscale(&ExactScalar::from_int(-1));
    t2 == rhs
}

/// The `q → q⁻¹` symmetry of the ten-vertex R-matrix:
/// `R^(1,2)(z)|_{q→1/q} = −(σ³⊗1) R^(1,2)(z⁻¹) (σ³⊗1)`.
pub fn check_q_inversion(z: &ExactScalar, params: &ModelParams) -> bool {
    let flipped = ModelParams::new(Rational::one() / &params.q).expect("generic q");
    debug_assert_eq!(flipped.ext, params.ext);
    let lhs = r12(z, &flipped);
    let conj = sigma3().kron(&Mat::<ExactScalar>::identity(3));
    let rhs = conj
        .matmul(&r12(&z.inv().expect("invertible z"), params))
        .matmul(&conj)
        .mscale(&ExactScalar::from_int(-1));
    lhs == rhs
}

/// Braid-form inversion `Ř(z⁻¹)Ř(z) = [q/z][q²/z][qz][q²z]·1` and the
/// highest-weight covector relation `⟨∧∧|Ř(z) = [qz][q²z]⟨∧∧|`.
pub fn check_rcheck_relations(z: &ExactScalar, params: &ModelParams) -> bool {
    let zi = z.inv().expect("invertible z");
    let prod = rcheck(RKind::K22, &zi, params).matmul(&rcheck(RKind::K22, z, params));
    let scale = params
        .brq(1, &zi)
        .mul_ref(&params.brq(2, &zi))
        .mul_ref(&params.brq(1, z))
        .mul_ref(&params.brq(2, z));
    if prod != Mat::<ExactScalar>::identity(9).mscale(&scale) {
        return false;
    }
    let rc = rcheck(RKind::K22, z, params);
    let factor = params.brq(1, z).mul_ref(&params.brq(2, z));
    for j in 0..9 {
        let expect = if j == 0 { factor.clone() } else { ExactScalar::zero() };
        if *rc.at(0, j) != expect {
            return false;
        }
    }
    true
}

/// Boundary Yang–Baxter equation, fish equation, the fusion construction
/// of `χ⁽²⁾`, and the projector-absorption identities.
pub fn check_boundary_ybe_and_fish(
    model: u8,
    z: &ExactScalar,
    w: &ExactScalar,
    b: &ExactScalar,
    params: &ModelParams,
) -> Result<bool, VertexError> {
    let kind = if model == 1 { RKind::K11 } else { RKind::K22 };
    let d = if model == 1 { 2usize } else { 3 };
    let dims = [d, d, d, d];
    let chi_z = boundary_vector(model, z, b, params)?;
    let chi_w = boundary_vector(model, w, b, params)?;
    // Boundary Yang–Baxter:
    // Ř₁₂(z/w) Ř₂₃(zw) (χ(w) ⊗ χ(z)) = Ř₃₄(z/w) Ř₂₃(zw) (χ(z) ⊗ χ(w)).
    let pair = |a: &[ExactScalar], c: &[ExactScalar]| -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); d * d * d * d];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in c.iter().enumerate() {
                v[i * d * d + j] = x.mul_ref(y);
            }
        }
        v
    };
    let zw_ratio = z.div_ref(w).expect("non-zero w");
    let zw_prod = z.mul_ref(w);
    let lhs = {
        let v = pair(&chi_w, &chi_z);
        let v = apply_local_to_vec(&rcheck(kind, &zw_prod, params), &dims, &[1, 2], &v);
        apply_local_to_vec(&rcheck(kind, &zw_ratio, params), &dims, &[0, 1], &v)
    };
    let rhs = {
        let v = pair(&chi_z, &chi_w);
        let v = apply_local_to_vec(&rcheck(kind, &zw_prod, params), &dims, &[1, 2], &v);
        apply_local_to_vec(&rcheck(kind, &zw_ratio, params), &dims, &[2, 3], &v)
    };
    if lhs != rhs {
        return Ok(false);
    }
    // Fish equation: Ř(z⁻²) χ(z) = [qz²] χ(1/z) (model 1),
    // with an extra factor [q²z²] for model 2.
    let z2_inv = z.mul_ref(z).inv().expect("invertible z");
    let fish_lhs = rcheck(kind, &z2_inv, params).matvec(&chi_z);
    let zi = z.inv().expect("invertible z");
    let chi_zi = boundary_vector(model, &zi, b, params)?;
    let z2 = z.mul_ref(z);
    let mut factor = params.brq(1, &z2);
    if model == 2 {
        factor = factor.mul_ref(&params.brq(2, &z2));
    }
    let fish_rhs: Vec<ExactScalar> = chi_zi.iter().map(|x| x.mul_ref(&factor)).collect();
    if fish_lhs != fish_rhs {
        return Ok(false);
    }
    if model == 2 && params.s.is_some() {
        // Fusion construction of χ⁽²⁾ out of two χ⁽¹⁾ factors.
        if boundary_vector_fused(z, b, params)? != chi_z {
            return Ok(false);
        }
        if !check_projector_absorption(z, w, b, params)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three projector-absorption identities used to strip `P⁺` factors
/// from the fused diagrams:
///
/// 1. on a column pair carrying `(qw, w)`:
///    `P⁺₂₃ R₁₂(z/(qw)) R₁₃(z/w) P⁺₂₃ = R₁₂(z/(qw)) R₁₃(z/w) P⁺₂₃`;
/// 2. on a column pair carrying `(w, qw)`:
///    `P⁺₂₃ R₁₂(z/w) R₁₃(z/(qw)) P⁺₂₃ = P⁺₂₃ R₁₂(z/w) R₁₃(z/(qw))`;
/// 3. at the boundary: in `(χ⁽¹⁾(√q z) ⊗ χ⁽¹⁾(z/√q)) Ř₂₃(z²) P⁺₁₂ P⁺₃₄`
///    the first-pair projector is absorbed by the second-pair one.
pub fn check_projector_absorption(
    z: &ExactScalar,
    w: &ExactScalar,
    b: &ExactScalar,
    params: &ModelParams,
) -> Result<bool, VertexError> {
    let dims3 = [2usize, 2, 2];
    let pp = embed_op(&p_plus(), &dims3, &[1, 2]);
    let zqw = z
        .div_ref(&params.qs().mul_ref(w))
        .expect("non-zero parameters");
    let zw = z.div_ref(w).expect("non-zero w");
    // Columns (qw, w): the horizontal line crosses the qw column first, and
    // the upper projector is absorbed by the lower one.
    let x1 = embed_op(&r11(&zqw, params), &dims3, &[0, 1])
        .matmul(&embed_op(&r11(&zw, params), &dims3, &[0, 2]));
    if pp.matmul(&x1).matmul(&pp) != x1.matmul(&pp) {
        return Ok(false);
    }
    // Columns (w, qw): the mirrored identity absorbing the lower projector.
    let x2 = embed_op(&r11(&zw, params), &dims3, &[0, 1])
        .matmul(&embed_op(&r11(&zqw, params), &dims3, &[0, 2]));
    if pp.matmul(&x2).matmul(&pp) != pp.matmul(&x2) {
        return Ok(false);
    }
    // Boundary identity on four spin-1/2 lines.
    let s = params.s_scalar()?;
    let dims4 = [2usize, 2, 2, 2];
    let chi_hi = boundary_vector(1, &s.mul_ref(z), b, params)?;
    let chi_lo = boundary_vector(1, &z.div_ref(&s).expect("non-zero s"), b, params)?;
    let mut cov = vec![ExactScalar::zero(); 16];
    for (i, a) in chi_hi.iter().enumerate() {
        for (j, c) in chi_lo.iter().enumerate() {
            cov[i * 4 + j] = a.mul_ref(c);
        }
    }
    // Covector action: multiply through transposed operators.
    let z2 = z.mul_ref(z);
    let step = |v: &[ExactScalar], op: &Mat<ExactScalar>, sites: &[usize]| {
        apply_local_to_vec(&op.transpose(), &dims4, sites, v)
    };
    let after_braid = step(&cov, &rcheck(RKind::K11, &z2, params), &[1, 2]);
    let with_second = step(&after_braid, &p_plus(), &[2, 3]);
    let with_both = step(&step(&after_braid, &p_plus(), &[0, 1]), &p_plus(), &[2, 3]);
    Ok(with_second == with_both)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rand_scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(p: i64, q: i64) -> ModelParams {
        ModelParams::new(Rational::new(p.into(), q.into())).unwrap()
    }

    /// Random rational scalar avoiding the degenerate points `0, ±1`.
    fn rand_generic(rng: &mut ChaCha8Rng, max_denom: u64) -> ExactScalar {
        loop {
            let z = rand_scalar(rng, max_denom);
            let z2 = z.mul_ref(&z);
            if !z.is_zero() && z2 != ExactScalar::one() {
                return z;
            }
        }
    }

    #[test]
    fn r11_special_points() {
        let pr = params(2, 1);
        // R(1) = [q]·P.
        let at_one = r11(&ExactScalar::one(), &pr);
        assert_eq!(at_one, perm(2).mscale(&pr.brqk(1)));
        // R(q) = B·P⁺.
        let at_q = r11(&pr.qs(), &pr);
        assert_eq!(at_q, b_mat(&pr).matmul(&p_plus()));
        // R(1/q) = −2[q]·P⁻.
        let at_qinv = r11(&pr.q_pow(-1), &pr);
        let scale = pr.brqk(1).scale(&Rational::from_integer((-2).into()));
        assert_eq!(at_qinv, p_minus().mscale(&scale));
    }

    #[test]
    fn projector_decomposition_of_p_plus() {
        let pr = params(3, 2);
        let b_inv = b_mat(&pr).inverse().unwrap();
        assert_eq!(p_plus(), b_inv.matmul(&r11(&pr.qs(), &pr)));
        assert_eq!(p_plus(), r11(&pr.qs(), &pr).matmul(&b_inv));
        assert_eq!(p_plus().matmul(&p_plus()), p_plus());
    }

    #[test]
    fn fused_ten_vertex_matches_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for pr in [params(2, 1), params(3, 2), params(-5, 3)] {
            for _ in 0..3 {
                let z = rand_scalar(&mut rng, 50);
                assert_eq!(r12_fused(&z, &pr), r12(&z, &pr), "q = {}", pr.q);
                assert_eq!(r12_fused_alt(&z, &pr), r12(&z, &pr), "alt, q = {}", pr.q);
            }
        }
    }

    #[test]
    fn fused_nineteen_vertex_matches_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for pr in [params(2, 1), params(3, 2)] {
            for _ in 0..2 {
                let z = rand_scalar(&mut rng, 50);
                assert_eq!(r22_fused(&z, &pr), r22(&z, &pr), "q = {}", pr.q);
            }
        }
    }

    #[test]
    fn central_nineteen_vertex_entry() {
        let pr = params(2, 1);
        let z = ExactScalar::ratio(7, 3);
        let expect = pr
            .br(&z)
            .mul_ref(&pr.brq(1, &z))
            .add_ref(&pr.brqk(1).mul_ref(&pr.brqk(2)));
        assert_eq!(*r22(&z, &pr).at(4, 4), expect);
    }

    #[test]
    fn yang_baxter_all_spin_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        let pr = params(2, 1);
        for (m, n, p) in [
            (1u8, 1u8, 1u8),
            (1, 1, 2),
            (1, 2, 1),
            (2, 1, 1),
            (1, 2, 2),
            (2, 1, 2),
            (2, 2, 1),
            (2, 2, 2),
        ] {
            let z = rand_scalar(&mut rng, 30);
            let w = rand_scalar(&mut rng, 30);
            assert!(
                check_yang_baxter(m, n, p, &z, &w, &pr),
                "YBE failed for ({m},{n},{p})"
            );
        }
    }

    #[test]
    fn yang_baxter_coinciding_points() {
        let pr = params(2, 1);
        let z = ExactScalar::ratio(5, 2);
        assert!(check_yang_baxter(2, 2, 2, &z, &z, &pr));
    }

    #[test]
    fn inversion_and_crossing() {
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        for pr in [params(2, 1), params(5, 2)] {
            for _ in 0..3 {
                let z = rand_scalar(&mut rng, 40);
                assert!(check_inversion_crossing(&z, &pr));
            }
            assert!(check_inversion_crossing(&ExactScalar::one(), &pr));
        }
    }

    #[test]
    fn q_inversion_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        let pr = params(3, 2);
        for _ in 0..3 {
            let z = rand_scalar(&mut rng, 40);
            assert!(check_q_inversion(&z, &pr));
        }
    }

    #[test]
    fn braid_inversion_and_highest_weight_row() {
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        let pr = params(2, 1);
        for _ in 0..3 {
            let z = rand_scalar(&mut rng, 40);
            assert!(check_rcheck_relations(&z, &pr));
        }
    }

    #[test]
    fn boundary_vector_homogeneous_point() {
        let pr = params(2, 1);
        let b = ExactScalar::ratio(7, 1);
        let v = boundary_vector(2, &ExactScalar::one(), &b, &pr).unwrap();
        // [b][bq]|⇑⇓⟩ − [bq][b/q]|00⟩ + [b][b/q]|⇓⇑⟩.
        let bq = b.mul_ref(&pr.qs());
        let b_over_q = b.div_ref(&pr.qs()).unwrap();
        assert_eq!(v[2], pr.br(&b).mul_ref(&pr.br(&bq)));
        assert_eq!(v[4], pr.br(&bq).mul_ref(&pr.br(&b_over_q)).neg_ref());
        assert_eq!(v[6], pr.br(&b).mul_ref(&pr.br(&b_over_q)));
        // b = q kills the |⇓⇑⟩ component at z = 1.
        let vq = boundary_vector(2, &ExactScalar::one(), &pr.qs(), &pr).unwrap();
        assert!(vq[6].is_zero());
    }

    #[test]
    fn boundary_relations_model_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        let pr = ModelParams::from_s(Rational::new(2.into(), 1.into())).unwrap();
        for _ in 0..3 {
            let z = rand_generic(&mut rng, 20);
            let w = rand_generic(&mut rng, 20);
            let b = rand_generic(&mut rng, 20);
            assert!(check_boundary_ybe_and_fish(1, &z, &w, &b, &pr).unwrap());
        }
    }

    #[test]
    fn boundary_relations_model_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(137);
        let pr = ModelParams::from_s(Rational::new(3.into(), 2.into())).unwrap();
        for _ in 0..3 {
            let z = rand_generic(&mut rng, 20);
            let w = rand_generic(&mut rng, 20);
            let b = rand_generic(&mut rng, 20);
            assert!(check_boundary_ybe_and_fish(2, &z, &w, &b, &pr).unwrap());
        }
        // The equal-parameter case degenerates gracefully.
        let z = ExactScalar::ratio(5, 3);
        let b = ExactScalar::ratio(7, 2);
        assert!(check_boundary_ybe_and_fish(2, &z, &z, &b, &pr).unwrap());
    }

    #[test]
    fn model_one_requires_half_parameter() {
        let pr = params(2, 1);
        let z = ExactScalar::ratio(3, 1);
        let b = ExactScalar::ratio(5, 1);
        assert_eq!(
            boundary_vector(1, &z, &b, &pr).unwrap_err(),
            VertexError::HalfParameterRequired
        );
    }
}
