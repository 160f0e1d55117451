//! Monodromy operators, twisted transfer matrices, the spin-one chain
//! Hamiltonian (built two independent ways), symmetry operators, and
//! floating-point spectrum probes.

use crate::exact::{embed_op, ExactScalar, LaurentPoly, Mat, Rational};
use crate::vertex::{q_proj, r22_generic, u_inv, u_mat, ModelParams};
use num::One;
use serde::Serialize;

/// Errors from transfer-matrix and Hamiltonian construction.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TransferError {
    /// An inhomogeneity parameter vanished.
    #[error("inhomogeneity parameters must be invertible")]
    NonInvertibleInhomogeneity,
    /// The trace and fusion constructions of the level-2 transfer matrix
    /// disagree.
    #[error("internal consistency error: fusion and trace forms of the transfer matrix disagree")]
    FusionMismatch,
    /// The chain is too short for a bond Hamiltonian.
    #[error("chain length must be at least 2")]
    ChainTooShort,
    /// The homogeneous transfer matrix is singular at z = 1.
    #[error("transfer matrix is singular at the homogeneous point")]
    SingularTransfer,
}

/// Site count and inhomogeneity parameters of the chain.
#[derive(Clone, Debug)]
pub struct InhomParams {
    /// Number of sites.
    pub n: usize,
    /// Invertible inhomogeneities, one per site.
    pub w: Vec<ExactScalar>,
}

impl InhomParams {
    /// Build from a list of invertible inhomogeneities.
    pub fn new(w: Vec<ExactScalar>) -> Result<Self, TransferError> {
        if w.iter().any(|x| x.is_zero()) {
            return Err(TransferError::NonInvertibleInhomogeneity);
        }
        Ok(InhomParams { n: w.len(), w })
    }

    /// The homogeneous point `w_j = 1`.
    pub fn homogeneous(n: usize) -> Self {
        InhomParams {
            n,
            w: vec![ExactScalar::one(); n],
        }
    }

    /// Whether the inhomogeneities are pairwise distinct (needed by the
    /// separation-of-variables constructions).
    pub fn pairwise_distinct(&self) -> bool {
        for i in 0..self.n {
            for j in 0..i {
                if self.w[i] == self.w[j] {
                    return false;
                }
            }
        }
        true
    }
}

/// The two integrable twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwistKind {
    /// `Ω⁽¹⁾ = diag(i, −i)`, `Ω⁽²⁾ = diag(−1, 1, −1)`.
    Diagonal,
    /// `Ω⁽¹⁾ = [[0, i], [i, 0]]`, `Ω⁽²⁾ = −antidiag(1, 1, 1)`.
    AntiDiagonal,
}

impl TwistKind {
    /// Spin-1/2 twist matrix `Ω⁽¹⁾`.
    pub fn omega1(self) -> Mat<ExactScalar> {
        let i = ExactScalar::i();
        let z = ExactScalar::zero();
        match self {
            TwistKind::Diagonal => {
                Mat::from_entries(2, 2, vec![i.clone(), z.clone(), z, i.neg_ref()])
            }
            TwistKind::AntiDiagonal => {
                Mat::from_entries(2, 2, vec![z.clone(), i.clone(), i, z])
            }
        }
    }

    /// Spin-1 twist matrix `Ω⁽²⁾`.
    pub fn omega2(self) -> Mat<ExactScalar> {
        let o = ExactScalar::one();
        let m = ExactScalar::from_int(-1);
        let z = ExactScalar::zero();
        match self {
            TwistKind::Diagonal => Mat::from_entries(
                3,
                3,
                vec![
                    m.clone(), z.clone(), z.clone(),
                    z.clone(), o, z.clone(),
                    z.clone(), z.clone(), m,
                ],
            ),
            TwistKind::AntiDiagonal => Mat::from_entries(
                3,
                3,
                vec![
                    z.clone(), z.clone(), m.clone(),
                    z.clone(), m.clone(), z.clone(),
                    m, z.clone(), z.clone(),
                ],
            ),
        }
    }

    /// `Ω⁽²⁾` reconstructed by fusing two spin-1/2 twists:
    /// `Q U (Ω⁽¹⁾⊗Ω⁽¹⁾) U⁻¹ Qᵗ`.
    pub fn omega2_from_fusion(self, params: &ModelParams) -> Mat<ExactScalar> {
        let q = q_proj();
        let o1 = self.omega1();
        q.matmul(&u_mat(params))
            .matmul(&o1.kron(&o1))
            .matmul(&u_inv(params))
            .matmul(&q.transpose())
    }
}

/// A dense exact operator on `(C^d)^{⊗N}`; index = base-`d` digit string
/// `σ₁…σ_N` with site 1 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    /// Local dimension (2 or 3).
    pub local_dim: usize,
    /// Number of sites.
    pub n: usize,
    /// The dense matrix, of size `local_dim^n`.
    pub m: Mat<ExactScalar>,
}

impl OperatorMatrix {
    /// Wrap a dense matrix, checking the dimension.
    pub fn new(local_dim: usize, n: usize, m: Mat<ExactScalar>) -> Self {
        assert_eq!(m.rows, local_dim.pow(n as u32));
        assert_eq!(m.cols, m.rows);
        OperatorMatrix { local_dim, n, m }
    }
}

fn dims_vec(aux: usize, n: usize, local: usize) -> Vec<usize> {
    let mut dims = vec![local; n + 1];
    dims[0] = aux;
    dims
}

/// Full spin-1/2 monodromy matrix `𝒯 = R_{a,N}(q⁻¹z/w_N)···R_{a,1}(q⁻¹z/w₁)`
/// on `C² ⊗ (C³)^{⊗N}`.
fn monodromy_full_level1(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
) -> Mat<ExactScalar> {
    let dims = dims_vec(2, inhom.n, 3);
    let shift = z.div_ref(&params.qs()).expect("non-zero q");
    let mut m: Option<Mat<ExactScalar>> = None;
    for j in 1..=inhom.n {
        let arg = shift
            .div_ref(&inhom.w[j - 1])
            .expect("invertible inhomogeneity");
        let rj = embed_op(&crate::vertex::r12(&arg, params), &dims, &[0, j]);
        m = Some(match m {
            None => rj,
            Some(acc) => rj.matmul(&acc),
        });
    }
    m.expect("at least one site")
}

/// Full spin-1 monodromy matrix `𝒯 = R_{a,N}(z/w_N)···R_{a,1}(z/w₁)` on
/// `C³ ⊗ (C³)^{⊗N}`.
fn monodromy_full_level2(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
) -> Mat<ExactScalar> {
    let dims = dims_vec(3, inhom.n, 3);
    let mut m: Option<Mat<ExactScalar>> = None;
    for j in 1..=inhom.n {
        let arg = z
            .div_ref(&inhom.w[j - 1])
            .expect("invertible inhomogeneity");
        let rj = embed_op(&crate::vertex::r22(&arg, params), &dims, &[0, j]);
        m = Some(match m {
            None => rj,
            Some(acc) => rj.matmul(&acc),
        });
    }
    m.expect("at least one site")
}

/// The four `3^N`-dimensional blocks `(𝒜, ℬ, 𝒞, 𝒟)` of the spin-1/2
/// monodromy matrix.
pub fn monodromy_blocks(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
) -> (OperatorMatrix, OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let full = monodromy_full_level1(z, params, inhom);
    let d = 3usize.pow(inhom.n as u32);
    let block = |ra: usize, ca: usize| {
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                *m.at_mut(i, j) = full.at(ra * d + i, ca * d + j).clone();
            }
        }
        OperatorMatrix::new(3, inhom.n, m)
    };
    (block(0, 0), block(0, 1), block(1, 0), block(1, 1))
}

/// The function `a(z) = ∏_j [q z / w_j]`.
pub fn a_fn(z: &ExactScalar, params: &ModelParams, inhom: &InhomParams) -> ExactScalar {
    let mut out = ExactScalar::one();
    for w in &inhom.w {
        let arg = z.div_ref(w).expect("invertible inhomogeneity");
        out = out.mul_ref(&params.brq(1, &arg));
    }
    out
}

/// The function `d(z) = ∏_j [q⁻¹ z / w_j]`.
pub fn d_fn(z: &ExactScalar, params: &ModelParams, inhom: &InhomParams) -> ExactScalar {
    let mut out = ExactScalar::one();
    for w in &inhom.w {
        let arg = z.div_ref(w).expect("invertible inhomogeneity");
        out = out.mul_ref(&params.brq(-1, &arg));
    }
    out
}

/// Twisted transfer matrix of the requested level.
///
/// Level 1: `T⁽¹⁾(z) = tr_a(Ω⁽¹⁾ 𝒯_a(z)) = i(𝒜 − 𝒟)` (diagonal twist) or
/// `i(ℬ + 𝒞)` (anti-diagonal twist).  Level 2: the `Ω⁽²⁾`-twisted trace over
/// the spin-1 auxiliary space; it is cross-checked against the fusion
/// formula `T⁽¹⁾(z) T⁽¹⁾(qz) − a(qz) d(z)·1` and any disagreement is an
/// internal error.
pub fn transfer(
    level: u8,
    z: &ExactScalar,
    twist: TwistKind,
    params: &ModelParams,
    inhom: &InhomParams,
) -> Result<OperatorMatrix, TransferError> {
    match level {
        1 => Ok(transfer_level1(z, twist, params, inhom)),
        2 => {
            let full = monodromy_full_level2(z, params, inhom);
            let d = 3usize.pow(inhom.n as u32);
            let omega = twist.omega2();
            let mut m: Mat<ExactScalar> = Mat::zeros(d, d);
            for a in 0..3 {
                for b in 0..3 {
                    if omega.at(a, b).is_zero() {
                        continue;
                    }
                    for i in 0..d {
                        for j in 0..d {
                            let v = full.at(b * d + i, a * d + j);
                            if !v.is_zero() {
                                let add = omega.at(a, b).mul_ref(v);
                                *m.at_mut(i, j) = m.at(i, j).add_ref(&add);
                            }
                        }
                    }
                }
            }
            // Fusion cross-check.
            let t1 = transfer_level1(z, twist, params, inhom);
            let qz = params.qs().mul_ref(z);
            let t1q = transfer_level1(&qz, twist, params, inhom);
            let scalar = a_fn(&qz, params, inhom).mul_ref(&d_fn(z, params, inhom));
            let fused = t1
                .m
                .matmul(&t1q.m)
                .msub(&Mat::<ExactScalar>::identity(d).mscale(&scalar));
            if fused != m {
                return Err(TransferError::FusionMismatch);
            }
            Ok(OperatorMatrix::new(3, inhom.n, m))
        }
        _ => panic!("transfer level must be 1 or 2"),
    }
}

fn transfer_level1(
    z: &ExactScalar,
    twist: TwistKind,
    params: &ModelParams,
    inhom: &InhomParams,
) -> OperatorMatrix {
    let (a, b, c, d) = monodromy_blocks(z, params, inhom);
    let i = ExactScalar::i();
    let m = match twist {
        TwistKind::Diagonal => a.m.msub(&d.m).mscale(&i),
        TwistKind::AntiDiagonal => b.m.madd(&c.m).mscale(&i),
    };
    OperatorMatrix::new(3, inhom.n, m)
}

// ---------------------------------------------------------------------------
// Spin-chain Hamiltonian.
// ---------------------------------------------------------------------------

/// The rescaled spin-1 operators `√2·s¹`, `√2·s²`, `s³`; rescaling keeps all
/// matrix entries in `Q(i)` and every Hamiltonian term carries the
/// compensating power of 1/2.
fn spin_ops() -> [Mat<ExactScalar>; 3] {
    let o = ExactScalar::one();
    let z = ExactScalar::zero();
    let i = ExactScalar::i();
    let s1 = Mat::from_entries(
        3,
        3,
        vec![
            z.clone(), o.clone(), z.clone(),
            o.clone(), z.clone(), o.clone(),
            z.clone(), o.clone(), z.clone(),
        ],
    );
    let s2 = Mat::from_entries(
        3,
        3,
        vec![
            z.clone(), i.neg_ref(), z.clone(),
            i.clone(), z.clone(), i.neg_ref(),
            z.clone(), i.clone(), z.clone(),
        ],
    );
    let s3 = Mat::from_entries(
        3,
        3,
        vec![
            o.clone(), z.clone(), z.clone(),
            z.clone(), z.clone(), z.clone(),
            z.clone(), z.clone(), ExactScalar::from_int(-1),
        ],
    );
    [s1, s2, s3]
}

/// The spin-one chain Hamiltonian with the twisted boundary identification
/// `s^a_{N+1} = Ω⁽²⁾ s^a_1 Ω⁽²⁾`, built directly from the coupling
/// constants `J_a` and `A_{ab}`.
pub fn hamiltonian(
    n: usize,
    x: &Rational,
    twist: TwistKind,
) -> Result<OperatorMatrix, TransferError> {
    if n < 2 {
        return Err(TransferError::ChainTooShort);
    }
    let s = spin_ops();
    let omega = twist.omega2();
    // Site-1 operators seen from the last bond.
    let s_tw: Vec<Mat<ExactScalar>> = s
        .iter()
        .map(|op| omega.matmul(op).matmul(&omega))
        .collect();
    let two = Rational::from_integer(2.into());
    let j3 = (x * x - &two) / &two;
    let j = [Rational::one(), Rational::one(), j3];
    let xm1 = x - Rational::one();
    let a = [
        [j[0].clone(), Rational::one(), xm1.clone()],
        [Rational::one(), j[1].clone(), xm1.clone()],
        [xm1.clone(), xm1, j[2].clone()],
    ];
    // 1/2 per rescaled factor in a product.
    let w_single = |idx: usize| -> Rational {
        if idx < 2 {
            Rational::new(1.into(), 2.into())
        } else {
            Rational::one()
        }
    };
    let bond = |left: &[Mat<ExactScalar>], right: &[Mat<ExactScalar>]| -> Mat<ExactScalar> {
        let mut h = Mat::zeros(9, 9);
        let id3 = Mat::<ExactScalar>::identity(3);
        for ai in 0..3 {
            let wgt = w_single(ai);
            let coupling = &j[ai] * &wgt;
            h = h.madd(&left[ai].kron(&right[ai]).mscale(&ExactScalar::from_rational(coupling)));
            let onsite = &j[ai] * &two * &wgt;
            h = h.madd(
                &left[ai]
                    .matmul(&left[ai])
                    .kron(&id3)
                    .mscale(&ExactScalar::from_rational(onsite)),
            );
            for bi in 0..3 {
                let prod_l = left[ai].matmul(&left[bi]);
                let prod_r = right[ai].matmul(&right[bi]);
                let wgt2 = w_single(ai) * w_single(bi);
                let coeff = -(&a[ai][bi] * &wgt2);
                h = h.madd(&prod_l.kron(&prod_r).mscale(&ExactScalar::from_rational(coeff)));
            }
        }
        h
    };
    let dims = vec![3usize; n];
    let total = 3usize.pow(n as u32);
    let mut h = Mat::zeros(total, total);
    let plain: Vec<Mat<ExactScalar>> = s.to_vec();
    for jsite in 0..n {
        let (b, sites) = if jsite + 1 < n {
            (bond(&plain, &plain), [jsite, jsite + 1])
        } else {
            (bond(&plain, &s_tw), [n - 1, 0])
        };
        h = h.madd(&embed_op(&b, &dims, &sites));
    }
    Ok(OperatorMatrix::new(3, n, h))
}

/// The Hamiltonian extracted from the homogeneous level-2 transfer matrix
/// by exact Laurent differentiation:
/// `H = N + ([q²]/2)·T⁽²⁾(1)⁻¹·(dT⁽²⁾/dz)(1)`.
pub fn hamiltonian_from_transfer(
    n: usize,
    params: &ModelParams,
    twist: TwistKind,
) -> Result<OperatorMatrix, TransferError> {
    if n < 2 {
        return Err(TransferError::ChainTooShort);
    }
    // The homogeneous R-matrix with Laurent entries in z.
    let bracket_poly = |k: i64| -> LaurentPoly {
        let mut p = LaurentPoly::monomial(params.q_pow(k), 1);
        p = p.sub_ref(&LaurentPoly::monomial(params.q_pow(-k), -1));
        p
    };
    let r_local = r22_generic(
        bracket_poly,
        LaurentPoly::constant(params.brqk(1)),
        LaurentPoly::constant(params.brqk(2)),
    );
    let dims = dims_vec(3, n, 3);
    let mut m: Option<Mat<LaurentPoly>> = None;
    for j in 1..=n {
        let rj = embed_op(&r_local, &dims, &[0, j]);
        m = Some(match m {
            None => rj,
            Some(acc) => rj.matmul(&acc),
        });
    }
    let full = m.expect("n >= 2");
    let omega = twist.omega2();
    let d = 3usize.pow(n as u32);
    let mut t_at_one: Mat<ExactScalar> = Mat::zeros(d, d);
    let mut dt_at_one: Mat<ExactScalar> = Mat::zeros(d, d);
    let one = ExactScalar::one();
    for a in 0..3 {
        for b in 0..3 {
            if omega.at(a, b).is_zero() {
                continue;
            }
            for i in 0..d {
                for jj in 0..d {
                    let p = full.at(b * d + i, a * d + jj);
                    if p.is_zero() {
                        continue;
                    }
                    let v = omega.at(a, b).mul_ref(&p.eval(&one));
                    *t_at_one.at_mut(i, jj) = t_at_one.at(i, jj).add_ref(&v);
                    let dv = omega.at(a, b).mul_ref(&p.derivative().eval(&one));
                    *dt_at_one.at_mut(i, jj) = dt_at_one.at(i, jj).add_ref(&dv);
                }
            }
        }
    }
    let t_inv = t_at_one
        .inverse()
        .map_err(|_| TransferError::SingularTransfer)?;
    let half_q2 = params.brqk(2).scale(&Rational::new(1.into(), 2.into()));
    let h = Mat::<ExactScalar>::identity(d)
        .mscale(&ExactScalar::from_int(n as i64))
        .madd(&t_inv.matmul(&dt_at_one).mscale(&half_q2));
    Ok(OperatorMatrix::new(3, n, h))
}

// ---------------------------------------------------------------------------
// Symmetry operators.
// ---------------------------------------------------------------------------

/// Magnetization eigenvalue of a basis state: `Σ_j (1 − σ_j)` with the
/// digits `σ_j ∈ {0, 1, 2}` read off the base-3 index.
pub fn magnetization_of(index: usize, n: usize) -> i64 {
    let mut idx = index;
    let mut m = 0i64;
    for _ in 0..n {
        m += 1 - (idx % 3) as i64;
        idx /= 3;
    }
    m
}

/// The symmetry operators `(M, F, S′)`: total magnetization, global spin
/// reversal, and the twisted translation `S′ = S·Ω⁽²⁾_N`.
pub fn symmetry_ops(
    n: usize,
    twist: TwistKind,
) -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let d = 3usize.pow(n as u32);
    let mut mag = Mat::zeros(d, d);
    let mut flip = Mat::zeros(d, d);
    for idx in 0..d {
        *mag.at_mut(idx, idx) = ExactScalar::from_int(magnetization_of(idx, n));
        // Reverse every spin: digit σ → 2 − σ.
        let mut rest = idx;
        let mut flipped = 0usize;
        let mut place = 1usize;
        for _ in 0..n {
            flipped += (2 - rest % 3) * place;
            rest /= 3;
            place *= 3;
        }
        *flip.at_mut(flipped, idx) = ExactScalar::one();
    }
    // Cyclic shift |σ₁…σ_N⟩ → |σ_N σ₁…σ_{N−1}⟩ after twisting site N.
    let omega = twist.omega2();
    let dims = vec![3usize; n];
    let omega_last = embed_op(&omega, &dims, &[n - 1]);
    let mut shift = Mat::zeros(d, d);
    for idx in 0..d {
        let last = idx % 3;
        let head = idx / 3;
        let target = last * d / 3 + head;
        *shift.at_mut(target, idx) = ExactScalar::one();
    }
    let sp = shift.matmul(&omega_last);
    (
        OperatorMatrix::new(3, n, mag),
        OperatorMatrix::new(3, n, flip),
        OperatorMatrix::new(3, n, sp),
    )
}

// ---------------------------------------------------------------------------
// Floating-point spectrum probe.
// ---------------------------------------------------------------------------

/// Spectrum of one Z₂ symmetry sector.
#[derive(Clone, Debug, Serialize)]
pub struct SectorSpectrum {
    /// Sector label, e.g. `"F=+1"` or `"(-1)^M=-1"`.
    pub sector: String,
    /// Sorted real eigenvalues with multiplicity.
    pub eigenvalues: Vec<f64>,
}

/// Result of a floating-point diagonalization of the chain Hamiltonian.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    /// Chain length.
    pub n: usize,
    /// Anisotropy `x`.
    pub x: f64,
    /// Twist used.
    pub twist: TwistKind,
    /// Per-sector spectra.
    pub sectors: Vec<SectorSpectrum>,
    /// Number of eigenvalues within tolerance of zero (whole spectrum).
    pub zero_degeneracy: usize,
    /// Smallest eigenvalue.
    pub min_eigenvalue: f64,
    /// Whether the non-zero parts of the two sector spectra coincide
    /// within tolerance.
    pub nonzero_spectra_match: bool,
    /// Gap threshold used, relative to the spectral diameter.
    pub tolerance: f64,
}

/// Diagonalize the chain Hamiltonian in floating point, split into the two
/// Z₂ sectors (`F = ±1` for the diagonal twist, `(−1)^M = ±1` for the
/// anti-diagonal twist).
pub fn spectrum_probe(
    n: usize,
    x: f64,
    twist: TwistKind,
) -> Result<SpectrumReport, TransferError> {
    assert!(n <= 8, "dense float diagonalization is capped at 8 sites");
    let xr = Rational::from_float(x).expect("finite anisotropy");
    let h = hamiltonian(n, &xr, twist)?;
    let d = h.m.rows;
    let hf: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| h.m.at(i, j).to_f64()).collect())
        .collect();
    // Sector bases (real orthonormal columns).
    let (labels, bases): ([String; 2], [Vec<Vec<f64>>; 2]) = match twist {
        TwistKind::AntiDiagonal => {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for idx in 0..d {
                let mut e = vec![0.0; d];
                e[idx] = 1.0;
                if magnetization_of(idx, n).rem_euclid(2) == 0 {
                    plus.push(e);
                } else {
                    minus.push(e);
                }
            }
            (
                ["(-1)^M=+1".into(), "(-1)^M=-1".into()],
                [plus, minus],
            )
        }
        TwistKind::Diagonal => {
            let flip_index = |idx: usize| -> usize {
                let mut rest = idx;
                let mut out = 0usize;
                let mut place = 1usize;
                for _ in 0..n {
                    out += (2 - rest % 3) * place;
                    rest /= 3;
                    place *= 3;
                }
                out
            };
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
            for idx in 0..d {
                let fidx = flip_index(idx);
                if fidx == idx {
                    let mut e = vec![0.0; d];
                    e[idx] = 1.0;
                    plus.push(e);
                } else if idx < fidx {
                    let mut ep = vec![0.0; d];
                    ep[idx] = inv_sqrt2;
                    ep[fidx] = inv_sqrt2;
                    plus.push(ep);
                    let mut em = vec![0.0; d];
                    em[idx] = inv_sqrt2;
                    em[fidx] = -inv_sqrt2;
                    minus.push(em);
                }
            }
            (["F=+1".into(), "F=-1".into()], [plus, minus])
        }
    };
    let mut sectors = Vec::new();
    let mut all: Vec<f64> = Vec::new();
    for (label, basis) in labels.iter().zip(bases.iter()) {
        let k = basis.len();
        // Project: H_s = Bᵗ H B.
        let mut hb = vec![vec![0.0; k]; d];
        for (c, bvec) in basis.iter().enumerate() {
            for i in 0..d {
                let mut acc = 0.0;
                for (jj, bj) in bvec.iter().enumerate() {
                    if *bj != 0.0 {
                        acc += hf[i][jj] * bj;
                    }
                }
                hb[i][c] = acc;
            }
        }
        let mut hs = vec![vec![0.0; k]; k];
        for (rr, bvec) in basis.iter().enumerate() {
            for c in 0..k {
                let mut acc = 0.0;
                for (i, bi) in bvec.iter().enumerate() {
                    if *bi != 0.0 {
                        acc += bi * hb[i][c];
                    }
                }
                hs[rr][c] = acc;
            }
        }
        let mut eigs = symmetric_eigenvalues(hs);
        eigs.sort_by(|p, q| p.partial_cmp(q).unwrap());
        all.extend_from_slice(&eigs);
        sectors.push(SectorSpectrum {
            sector: label.clone(),
            eigenvalues: eigs,
        });
    }
    all.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let diameter = (all.last().unwrap() - all.first().unwrap()).max(1.0);
    let tol = 1e-7 * diameter;
    let zero_degeneracy = all.iter().filter(|v| v.abs() <= tol).count();
    let min_eigenvalue = *all.first().unwrap();
    // Compare non-zero parts of the two sector spectra.
    let nz = |v: &[f64]| -> Vec<f64> {
        v.iter().copied().filter(|e| e.abs() > tol).collect()
    };
    let nz0 = nz(&sectors[0].eigenvalues);
    let nz1 = nz(&sectors[1].eigenvalues);
    let nonzero_spectra_match = nz0.len() == nz1.len()
        && nz0
            .iter()
            .zip(nz1.iter())
            .all(|(p, q)| (p - q).abs() <= 1e-9 * diameter.max(1.0));
    Ok(SpectrumReport {
        n,
        x,
        twist,
        sectors,
        zero_degeneracy,
        min_eigenvalue,
        nonzero_spectra_match,
        tolerance: tol,
    })
}

/// Eigenvalues of a dense real symmetric matrix via Householder
/// tridiagonalization followed by QL iteration with implicit shifts.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    // Householder reduction (eigenvalues only; vectors not accumulated).
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|v| v.abs()).sum();
            if scale == 0.0 {
                off[i] = a[i][l];
            } else {
                for j in 0..=l {
                    a[i][j] /= scale;
                    h += a[i][j] * a[i][j];
                }
                let mut f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                off[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    let g2 = {
                        let mut g2 = 0.0;
                        for k in 0..=j {
                            g2 += a[j][k] * a[i][k];
                        }
                        for k in (j + 1)..=l {
                            g2 += a[k][j] * a[i][k];
                        }
                        g2
                    };
                    off[j] = g2 / h;
                    f += off[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let fj = a[i][j];
                    let gj = off[j] - hh * fj;
                    off[j] = gj;
                    for k in 0..=j {
                        a[j][k] -= fj * off[k] + gj * a[i][k];
                    }
                }
            }
        } else {
            off[i] = a[i][l];
        }
        diag[i] = h;
    }
    for i in 0..n {
        diag[i] = a[i][i];
    }
    // QL with implicit shifts on the tridiagonal form.
    for i in 1..n {
        off[i - 1] = off[i];
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "QL iteration failed to converge");
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = diag[m] - diag[l] + off[l] / (g + sign_r);
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if r == 0.0 && m > l {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    diag
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

    fn rand_generic(rng: &mut ChaCha8Rng, max_denom: u64) -> ExactScalar {
        loop {
            let z = rand_scalar(rng, max_denom);
            if !z.is_zero() {
                return z;
            }
        }
    }

    fn rand_inhom(rng: &mut ChaCha8Rng, n: usize) -> InhomParams {
        loop {
            let w: Vec<ExactScalar> = (0..n).map(|_| rand_generic(rng, 10)).collect();
            let p = InhomParams::new(w).unwrap();
            if p.pairwise_distinct() {
                return p;
            }
        }
    }

    #[test]
    fn twist_matrices_fuse() {
        for pr in [params(2, 1), params(3, 2)] {
            for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
                assert_eq!(tw.omega2_from_fusion(&pr), tw.omega2());
            }
        }
    }

    #[test]
    fn single_site_monodromy_blocks() {
        let pr = params(2, 1);
        let z = ExactScalar::ratio(5, 3);
        let inhom = InhomParams::homogeneous(1);
        let (a, b, _c, d) = monodromy_blocks(&z, &pr, &inhom);
        // 𝒜(z)|⇑⟩ = [qz]|⇑⟩ and 𝒟(z)|⇑⟩ = [q⁻¹z]|⇑⟩ at w₁ = 1.
        assert_eq!(*a.m.at(0, 0), pr.brq(1, &z));
        assert_eq!(*d.m.at(0, 0), pr.brq(-1, &z));
        // ℬ(z) lowers the magnetization by one unit with weight √([q][q²]).
        let r = pr.r_elem();
        assert_eq!(*b.m.at(1, 0), r);
        assert_eq!(*b.m.at(2, 1), r);
        assert!(b.m.at(0, 1).is_zero() && b.m.at(2, 2).is_zero());
    }

    #[test]
    fn creation_operator_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pr = params(3, 2);
        for n in [1usize, 2, 3] {
            let inhom = rand_inhom(&mut rng, n);
            let z = rand_generic(&mut rng, 15);
            let (_a, b, _c, _d) = monodromy_blocks(&z, &pr, &inhom);
            let (_a2, bm, _c2, _d2) = monodromy_blocks(&z.neg_ref(), &pr, &inhom);
            let sign = if n % 2 == 0 { -1 } else { 1 };
            assert_eq!(bm.m, b.m.mscale(&ExactScalar::from_int(sign)));
        }
    }

    #[test]
    fn fusion_identity_small_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [1usize, 2, 3] {
            let pr = params(2, 1);
            let inhom = rand_inhom(&mut rng, n);
            let z = rand_generic(&mut rng, 15);
            for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
                assert!(transfer(2, &z, tw, &pr, &inhom).is_ok());
            }
        }
    }

    #[test]
    fn fusion_identity_four_sites() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pr = params(3, 2);
        let inhom = rand_inhom(&mut rng, 4);
        let z = rand_generic(&mut rng, 15);
        assert!(transfer(2, &z, TwistKind::Diagonal, &pr, &inhom).is_ok());
    }

    #[test]
    fn transfer_matrices_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let pr = params(2, 1);
        let inhom = rand_inhom(&mut rng, 2);
        let z = rand_generic(&mut rng, 15);
        let zp = rand_generic(&mut rng, 15);
        for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
            let t1 = transfer(1, &z, tw, &pr, &inhom).unwrap();
            let t1p = transfer(1, &zp, tw, &pr, &inhom).unwrap();
            assert_eq!(t1.m.matmul(&t1p.m), t1p.m.matmul(&t1.m));
            let t2 = transfer(2, &z, tw, &pr, &inhom).unwrap();
            let t2p = transfer(2, &zp, tw, &pr, &inhom).unwrap();
            assert_eq!(t2.m.matmul(&t2p.m), t2p.m.matmul(&t2.m));
            assert_eq!(t1.m.matmul(&t2p.m), t2p.m.matmul(&t1.m));
        }
    }

    #[test]
    fn antidiagonal_transfer_anticommutes_with_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pr = params(2, 1);
        let inhom = rand_inhom(&mut rng, 2);
        let z = rand_generic(&mut rng, 15);
        let t1 = transfer(1, &z, TwistKind::AntiDiagonal, &pr, &inhom).unwrap();
        let d = t1.m.rows;
        // (−1)^M is diagonal with entries ±1.
        let mut par = Mat::zeros(d, d);
        for idx in 0..d {
            let sign = if magnetization_of(idx, 2).rem_euclid(2) == 0 { 1 } else { -1 };
            *par.at_mut(idx, idx) = ExactScalar::from_int(sign);
        }
        let anti = par.matmul(&t1.m).madd(&t1.m.matmul(&par));
        assert!(anti.is_zero());
    }

    #[test]
    fn hamiltonian_symmetries() {
        let x = Rational::new(7.into(), 3.into());
        for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
            let h = hamiltonian(2, &x, tw).unwrap();
            let (m, f, _sp) = symmetry_ops(2, tw);
            assert_eq!(h.m.matmul(&f.m), f.m.matmul(&h.m), "spin reversal");
            match tw {
                TwistKind::Diagonal => {
                    assert_eq!(h.m.matmul(&m.m), m.m.matmul(&h.m), "magnetization")
                }
                TwistKind::AntiDiagonal => {
                    // Only magnetization parity survives the twist.
                    let d = h.m.rows;
                    let mut par = Mat::zeros(d, d);
                    for idx in 0..d {
                        let sign = if magnetization_of(idx, 2).rem_euclid(2) == 0 {
                            1
                        } else {
                            -1
                        };
                        *par.at_mut(idx, idx) = ExactScalar::from_int(sign);
                    }
                    assert_eq!(h.m.matmul(&par), par.matmul(&h.m), "parity");
                }
            }
        }
    }

    #[test]
    fn hamiltonian_is_real_symmetric() {
        let x = Rational::new(5.into(), 2.into());
        let h = hamiltonian(3, &x, TwistKind::AntiDiagonal).unwrap();
        assert_eq!(h.m, h.m.transpose());
        for i in 0..h.m.rows {
            for j in 0..h.m.cols {
                assert!(h.m.at(i, j).is_rational(), "entry ({i},{j}) not real");
            }
        }
    }

    #[test]
    fn hamiltonian_from_transfer_matches_direct() {
        for (n, p, q, tw) in [
            (2usize, 2i64, 1i64, TwistKind::Diagonal),
            (2, 3, 1, TwistKind::AntiDiagonal),
            (3, 2, 1, TwistKind::Diagonal),
            (3, 2, 1, TwistKind::AntiDiagonal),
        ] {
            let pr = params(p, q);
            let x = pr.x();
            let direct = hamiltonian(n, &x, tw).unwrap();
            let from_t = hamiltonian_from_transfer(n, &pr, tw).unwrap();
            assert_eq!(direct.m, from_t.m, "N={n}, q={p}/{q}");
        }
    }

    #[test]
    fn symmetry_operator_basics() {
        let (m, f, _sp) = symmetry_ops(2, TwistKind::AntiDiagonal);
        // |⇑⇓⟩ has index 0·3 + 2 = 2 and magnetization 0.
        assert!(m.m.at(2, 2).is_zero());
        // F|⇑0⟩ = |⇓0⟩: index 1 → index 7.
        assert_eq!(*f.m.at(7, 1), ExactScalar::one());
    }

    #[test]
    fn twisted_translation_power() {
        for n in [2usize, 3] {
            let (_m, f, sp) = symmetry_ops(n, TwistKind::AntiDiagonal);
            let mut acc = Mat::<ExactScalar>::identity(3usize.pow(n as u32));
            for _ in 0..n {
                acc = sp.m.matmul(&acc);
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(acc, f.m.mscale(&ExactScalar::from_int(sign)));
        }
    }

    #[test]
    fn translation_commutes_with_hamiltonian() {
        for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
            let x = Rational::new(4.into(), 3.into());
            let h = hamiltonian(3, &x, tw).unwrap();
            let (_m, _f, sp) = symmetry_ops(3, tw);
            assert_eq!(h.m.matmul(&sp.m), sp.m.matmul(&h.m));
        }
    }

    #[test]
    fn eigensolver_agrees_with_known_matrix() {
        // Eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2, 2±√2.
        let a = vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ];
        let mut e = symmetric_eigenvalues(a);
        e.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let s = 2.0_f64.sqrt();
        for (got, want) in e.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn spectra_of_twisted_chains() {
        // Diagonal twist at x = 1: the two spin-reversal sectors share
        // their non-zero spectra.
        let rep = spectrum_probe(3, 1.0, TwistKind::Diagonal).unwrap();
        assert!(rep.nonzero_spectra_match);
        // Anti-diagonal twist at x = 1: a unique zero mode in the sector
        // with magnetization parity (−1)^N.
        let rep = spectrum_probe(3, 1.0, TwistKind::AntiDiagonal).unwrap();
        assert_eq!(rep.zero_degeneracy, 1);
        let tol = rep.tolerance;
        let odd = rep
            .sectors
            .iter()
            .find(|s| s.sector == "(-1)^M=-1")
            .unwrap();
        assert!(odd.eigenvalues.iter().any(|e| e.abs() <= tol));
        // Anti-diagonal twist at x = 0, N = 2: zero mode of degeneracy 3.
        let rep = spectrum_probe(2, 0.0, TwistKind::AntiDiagonal).unwrap();
        assert_eq!(rep.zero_degeneracy, 3);
    }

    #[test]
    fn antidiagonal_doublets() {
        // For the anti-diagonal twist, (−1)^M conjugation negates T⁽¹⁾, so
        // non-zero eigenvalues come in ± pairs.
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let pr = params(2, 1);
        let inhom = rand_inhom(&mut rng, 2);
        let z = rand_generic(&mut rng, 15);
        let t1 = transfer(1, &z, TwistKind::AntiDiagonal, &pr, &inhom).unwrap();
        let d = t1.m.rows;
        let mut par = Mat::zeros(d, d);
        for idx in 0..d {
            let sign = if magnetization_of(idx, 2).rem_euclid(2) == 0 { 1 } else { -1 };
            *par.at_mut(idx, idx) = ExactScalar::from_int(sign);
        }
        let conj = par.matmul(&t1.m).matmul(&par);
        assert_eq!(conj, t1.m.mscale(&ExactScalar::from_int(-1)));
    }
}
