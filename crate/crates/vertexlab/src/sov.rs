//! Separation-of-variables height basis for the ten-vertex monodromy
//! operators, the special zero-eigenvalue vectors of the twisted transfer
//! matrices, and their homogeneous limits.

use crate::exact::{apply_local_to_vec, ExactScalar, Mat, Rational};
use crate::transfer::{a_fn, d_fn, transfer, InhomParams, TwistKind};
use crate::vertex::{r12, ModelParams};
use num::One;

/// Errors from the separated-basis constructions.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SovError {
    /// A normalization factor `a(q^{1−k}w_j)` or `d(q^{−k}w_j)` vanished.
    #[error("degenerate inhomogeneities")]
    DegenerateInhomogeneities,
    /// The separated basis requires pairwise-distinct inhomogeneities.
    #[error("inhomogeneities must be pairwise distinct")]
    NotDistinct,
    /// A null space expected to be a line has a different dimension.
    #[error("degenerate parameters: null-space dimension {0} (expected 1)")]
    KernelDimension(usize),
    /// The square-root prefactor failed to clear the extension part.
    #[error("internal consistency error: extension part did not cancel")]
    ExtensionResidue,
}

/// A height profile `h ∈ {0,1,2}^N` labelling a separated-basis state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    /// Heights, one per site.
    pub h: Vec<u8>,
}

impl HeightProfile {
    /// Build from heights, checking the componentwise bounds.
    pub fn new(h: Vec<u8>) -> Self {
        assert!(h.iter().all(|&x| x <= 2), "heights must lie in {{0,1,2}}");
        HeightProfile { h }
    }

    /// The magnetization `Σ_j (1 − h_j)` carried by the state.
    pub fn magnetization(&self) -> i64 {
        self.h.iter().map(|&x| 1 - x as i64).sum()
    }

    /// All `3^N` profiles in lexicographic order.
    pub fn all(n: usize) -> Vec<HeightProfile> {
        let total = 3usize.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut h = vec![0u8; n];
                for j in (0..n).rev() {
                    h[j] = (idx % 3) as u8;
                    idx /= 3;
                }
                HeightProfile { h }
            })
            .collect()
    }
}

/// A distinguished transfer-matrix null vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialVector {
    /// Twist the vector belongs to.
    pub twist: TwistKind,
    /// Whether the inhomogeneities are generic (true) or all 1 (false).
    pub inhomogeneous: bool,
    /// Dense components on `(C³)^{⊗N}`.
    pub components: Vec<ExactScalar>,
    /// Human-readable normalization tag.
    pub normalization: String,
}

// ---------------------------------------------------------------------------
// Matrix-free monodromy actions.
// ---------------------------------------------------------------------------

/// Apply one block of the spin-1/2 monodromy matrix to a vector without
/// materializing the full operator.  `row`/`col` select the auxiliary
/// in/out states (`(0,1) = ℬ`, `(1,0) = 𝒞`, …); `transpose` applies the
/// transposed block instead (for covectors).
pub fn apply_monodromy_block(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    row: usize,
    col: usize,
    v: &[ExactScalar],
    transpose: bool,
) -> Vec<ExactScalar> {
    let n = inhom.n;
    let d_tot = 3usize.pow(n as u32);
    assert_eq!(v.len(), d_tot);
    let mut dims = vec![3usize; n + 1];
    dims[0] = 2;
    let (in_aux, out_aux) = if transpose { (row, col) } else { (col, row) };
    let mut w = vec![ExactScalar::zero(); 2 * d_tot];
    w[in_aux * d_tot..(in_aux + 1) * d_tot].clone_from_slice(v);
    let shift = z.div_ref(&params.qs()).expect("non-zero q");
    let order: Vec<usize> = if transpose {
        (1..=n).rev().collect()
    } else {
        (1..=n).collect()
    };
    for j in order {
        let arg = shift
            .div_ref(&inhom.w[j - 1])
            .expect("invertible inhomogeneity");
        let mut op = r12(&arg, params);
        if transpose {
            op = op.transpose();
        }
        w = apply_local_to_vec(&op, &dims, &[0, j], &w);
    }
    w[out_aux * d_tot..(out_aux + 1) * d_tot].to_vec()
}

/// `ℬ(z)|v⟩`.
pub fn apply_b(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    v: &[ExactScalar],
) -> Vec<ExactScalar> {
    apply_monodromy_block(z, params, inhom, 0, 1, v, false)
}

/// `𝒞(z)|v⟩`.
pub fn apply_c(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    v: &[ExactScalar],
) -> Vec<ExactScalar> {
    apply_monodromy_block(z, params, inhom, 1, 0, v, false)
}

/// `𝒟(z)|v⟩`.
pub fn apply_d(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    v: &[ExactScalar],
) -> Vec<ExactScalar> {
    apply_monodromy_block(z, params, inhom, 1, 1, v, false)
}

/// The covector `⟨u|ℬ(z)` (returned as its component list).
pub fn apply_b_dual(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    u: &[ExactScalar],
) -> Vec<ExactScalar> {
    apply_monodromy_block(z, params, inhom, 0, 1, u, true)
}

/// The covector `⟨u|𝒞(z)`.
pub fn apply_c_dual(
    z: &ExactScalar,
    params: &ModelParams,
    inhom: &InhomParams,
    u: &[ExactScalar],
) -> Vec<ExactScalar> {
    apply_monodromy_block(z, params, inhom, 1, 0, u, true)
}

/// Matrix-free application of the level-1 twisted transfer matrix.
pub fn apply_t1(
    z: &ExactScalar,
    twist: TwistKind,
    params: &ModelParams,
    inhom: &InhomParams,
    v: &[ExactScalar],
) -> Vec<ExactScalar> {
    let i = ExactScalar::i();
    let (p, q) = match twist {
        TwistKind::Diagonal => (
            apply_monodromy_block(z, params, inhom, 0, 0, v, false),
            apply_monodromy_block(z, params, inhom, 1, 1, v, false)
                .iter()
                .map(|x| x.neg_ref())
                .collect::<Vec<_>>(),
        ),
        TwistKind::AntiDiagonal => (
            apply_b(z, params, inhom, v),
            apply_c(z, params, inhom, v),
        ),
    };
    p.iter()
        .zip(q.iter())
        .map(|(x, y)| x.add_ref(y).mul_ref(&i))
        .collect()
}

// ---------------------------------------------------------------------------
// Height states.
// ---------------------------------------------------------------------------

fn highest_weight(n: usize) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(); 3usize.pow(n as u32)];
    v[0] = ExactScalar::one();
    v
}

/// The separated-basis state
/// `||h⟩⟩ = ∏_j ∏_{k<h_j} (ℬ(q^{1−k}w_j)/a(q^{1−k}w_j)) |∧⟩`.
pub fn height_state(
    h: &HeightProfile,
    inhom: &InhomParams,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, SovError> {
    if !inhom.pairwise_distinct() {
        return Err(SovError::NotDistinct);
    }
    let mut v = highest_weight(inhom.n);
    for (j, &hj) in h.h.iter().enumerate() {
        for k in 0..hj {
            let z = params.q_pow(1 - k as i64).mul_ref(&inhom.w[j]);
            let norm = a_fn(&z, params, inhom);
            if norm.is_zero() {
                return Err(SovError::DegenerateInhomogeneities);
            }
            let inv = norm.inv().expect("non-zero");
            v = apply_b(&z, params, inhom, &v)
                .iter()
                .map(|x| x.mul_ref(&inv))
                .collect();
        }
    }
    Ok(v)
}

/// The dual state `⟨⟨h|| = ⟨∧| ∏_j ∏_{k<h_j} (𝒞(q^{1−k}w_j)/d(q^{−k}w_j))`.
pub fn dual_height_state(
    h: &HeightProfile,
    inhom: &InhomParams,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, SovError> {
    if !inhom.pairwise_distinct() {
        return Err(SovError::NotDistinct);
    }
    let mut u = highest_weight(inhom.n);
    for (j, &hj) in h.h.iter().enumerate() {
        for k in 0..hj {
            let z = params.q_pow(1 - k as i64).mul_ref(&inhom.w[j]);
            let dnorm = d_fn(&params.q_pow(-(k as i64)).mul_ref(&inhom.w[j]), params, inhom);
            if dnorm.is_zero() {
                return Err(SovError::DegenerateInhomogeneities);
            }
            let inv = dnorm.inv().expect("non-zero");
            u = apply_c_dual(&z, params, inhom, &u)
                .iter()
                .map(|x| x.mul_ref(&inv))
                .collect();
        }
    }
    Ok(u)
}

/// Closed form of the pairing `⟨⟨h||h⟩⟩` (diagonal part of eqn of the
/// scalar product between left and right separated states).
pub fn height_pairing(
    h: &HeightProfile,
    inhom: &InhomParams,
    params: &ModelParams,
) -> ExactScalar {
    let n = inhom.n;
    let total: u32 = h.h.iter().map(|&x| x as u32).sum();
    let mut out = if total % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_int(-1)
    };
    for j in 0..n {
        for k in (j + 1)..n {
            let ratio = inhom.w[j]
                .div_ref(&inhom.w[k])
                .expect("invertible inhomogeneity");
            let num = params.br(&ratio);
            let den = params.brq(h.h[k] as i64 - h.h[j] as i64, &ratio);
            out = out.mul_ref(&num.div_ref(&den).expect("generic inhomogeneities"));
        }
    }
    out
}

fn dot(u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (x, y) in u.iter().zip(v.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add_ref(&x.mul_ref(y));
        }
    }
    acc
}

/// The hopping amplitude common to the `ℬ`/`𝒞` actions in the separated
/// basis: `∏_{k≠j} [q^{−1+h_k}z/w_k] / [q^{h_k−h_j}w_j/w_k]`.
fn hopping_product(
    h: &HeightProfile,
    j: usize,
    z: &ExactScalar,
    inhom: &InhomParams,
    params: &ModelParams,
) -> ExactScalar {
    let mut out = ExactScalar::one();
    for k in 0..inhom.n {
        if k == j {
            continue;
        }
        let num = params.brq(
            -1 + h.h[k] as i64,
            &z.div_ref(&inhom.w[k]).expect("invertible"),
        );
        let den = params.brq(
            h.h[k] as i64 - h.h[j] as i64,
            &inhom.w[j].div_ref(&inhom.w[k]).expect("invertible"),
        );
        out = out.mul_ref(&num.div_ref(&den).expect("generic inhomogeneities"));
    }
    out
}

/// Verify the whole separated-basis tool set exactly: the diagonal `𝒟`
/// action, the `ℬ`/`𝒞` hopping formulas, their dual counterparts, the
/// closed-form pairing, and the completeness relation.
pub fn check_sov_structure(inhom: &InhomParams, params: &ModelParams) -> Result<bool, SovError> {
    let n = inhom.n;
    assert!(n <= 3, "separated-basis verification is capped at 3 sites");
    let d_tot = 3usize.pow(n as u32);
    let z = ExactScalar::ratio(17, 13);
    let profiles = HeightProfile::all(n);
    let states: Vec<Vec<ExactScalar>> = profiles
        .iter()
        .map(|h| height_state(h, inhom, params))
        .collect::<Result<_, _>>()?;
    let duals: Vec<Vec<ExactScalar>> = profiles
        .iter()
        .map(|h| dual_height_state(h, inhom, params))
        .collect::<Result<_, _>>()?;
    let index_of = |h: &HeightProfile| -> usize {
        h.h.iter().fold(0usize, |acc, &x| acc * 3 + x as usize)
    };
    let scaled = |v: &[ExactScalar], c: &ExactScalar| -> Vec<ExactScalar> {
        v.iter().map(|x| x.mul_ref(c)).collect()
    };
    let add_into = |acc: &mut [ExactScalar], v: &[ExactScalar]| {
        for (a, b) in acc.iter_mut().zip(v.iter()) {
            *a = a.add_ref(b);
        }
    };
    for (hi, h) in profiles.iter().enumerate() {
        // (i) 𝒟 eigenrelation.
        let mut eig = ExactScalar::one();
        for j in 0..n {
            eig = eig.mul_ref(&params.brq(
                -1 + h.h[j] as i64,
                &z.div_ref(&inhom.w[j]).expect("invertible"),
            ));
        }
        if apply_d(&z, params, inhom, &states[hi]) != scaled(&states[hi], &eig) {
            return Ok(false);
        }
        // (ii) ℬ hopping.
        let mut expect = vec![ExactScalar::zero(); d_tot];
        for j in 0..n {
            if h.h[j] == 2 {
                continue;
            }
            let arg = params.q_pow(1 - h.h[j] as i64).mul_ref(&inhom.w[j]);
            let amp = a_fn(&arg, params, inhom)
                .mul_ref(&hopping_product(h, j, &z, inhom, params));
            let mut hp = h.clone();
            hp.h[j] += 1;
            add_into(&mut expect, &scaled(&states[index_of(&hp)], &amp));
        }
        if apply_b(&z, params, inhom, &states[hi]) != expect {
            return Ok(false);
        }
        // (iii) 𝒞 hopping.
        let mut expect = vec![ExactScalar::zero(); d_tot];
        for j in 0..n {
            if h.h[j] == 0 {
                continue;
            }
            let arg = params.q_pow(1 - h.h[j] as i64).mul_ref(&inhom.w[j]);
            let amp = d_fn(&arg, params, inhom)
                .mul_ref(&hopping_product(h, j, &z, inhom, params))
                .neg_ref();
            let mut hm = h.clone();
            hm.h[j] -= 1;
            add_into(&mut expect, &scaled(&states[index_of(&hm)], &amp));
        }
        if apply_c(&z, params, inhom, &states[hi]) != expect {
            return Ok(false);
        }
        // (iv) dual 𝒟, ℬ, 𝒞 actions.
        if apply_monodromy_block(&z, params, inhom, 1, 1, &duals[hi], true)
            != scaled(&duals[hi], &eig)
        {
            return Ok(false);
        }
        let mut expect = vec![ExactScalar::zero(); d_tot];
        for j in 0..n {
            if h.h[j] == 0 {
                continue;
            }
            let arg = params.q_pow(2 - h.h[j] as i64).mul_ref(&inhom.w[j]);
            let amp = a_fn(&arg, params, inhom)
                .mul_ref(&hopping_product(h, j, &z, inhom, params))
                .neg_ref();
            let mut hm = h.clone();
            hm.h[j] -= 1;
            add_into(&mut expect, &scaled(&duals[index_of(&hm)], &amp));
        }
        if apply_b_dual(&z, params, inhom, &duals[hi]) != expect {
            return Ok(false);
        }
        let mut expect = vec![ExactScalar::zero(); d_tot];
        for j in 0..n {
            if h.h[j] == 2 {
                continue;
            }
            let arg = params.q_pow(-(h.h[j] as i64)).mul_ref(&inhom.w[j]);
            let amp = d_fn(&arg, params, inhom)
                .mul_ref(&hopping_product(h, j, &z, inhom, params));
            let mut hp = h.clone();
            hp.h[j] += 1;
            add_into(&mut expect, &scaled(&duals[index_of(&hp)], &amp));
        }
        if apply_c_dual(&z, params, inhom, &duals[hi]) != expect {
            return Ok(false);
        }
        // (v) pairings against the closed form.
        for (hj, hp) in profiles.iter().enumerate() {
            let got = dot(&duals[hi], &states[hj]);
            let want = if hi == hj {
                height_pairing(hp, inhom, params)
            } else {
                ExactScalar::zero()
            };
            if got != want {
                return Ok(false);
            }
        }
    }
    // (vi) completeness.
    let mut sum: Mat<ExactScalar> = Mat::zeros(d_tot, d_tot);
    for (hi, h) in profiles.iter().enumerate() {
        let norm = height_pairing(h, inhom, params)
            .inv()
            .expect("non-degenerate pairing");
        for r in 0..d_tot {
            if states[hi][r].is_zero() {
                continue;
            }
            for c in 0..d_tot {
                if duals[hi][c].is_zero() {
                    continue;
                }
                let v = states[hi][r].mul_ref(&duals[hi][c]).mul_ref(&norm);
                *sum.at_mut(r, c) = sum.at(r, c).add_ref(&v);
            }
        }
    }
    Ok(sum == Mat::<ExactScalar>::identity(d_tot))
}

// ---------------------------------------------------------------------------
// Special vectors.
// ---------------------------------------------------------------------------

/// The diagonal-twist null vector `|ψ_D⟩ = ∏_j ℬ(w_j)|∧⟩` (Bethe roots at
/// the inhomogeneities).
pub fn psi_d(inhom: &InhomParams, params: &ModelParams) -> SpecialVector {
    let mut v = highest_weight(inhom.n);
    for w in &inhom.w {
        v = apply_b(w, params, inhom, &v);
    }
    SpecialVector {
        twist: TwistKind::Diagonal,
        inhomogeneous: true,
        components: v,
        normalization: "bethe-product".into(),
    }
}

/// The dual null vector `⟨ψ_D| = ⟨∧| ∏_j 𝒞(w_j)` as a component list.
pub fn psi_d_dual(inhom: &InhomParams, params: &ModelParams) -> Vec<ExactScalar> {
    let mut u = highest_weight(inhom.n);
    for w in &inhom.w {
        u = apply_c_dual(w, params, inhom, &u);
    }
    u
}

/// Construction method for the anti-diagonal null vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiAdMethod {
    /// Reconstruction from its separated-basis projections.
    Sov,
    /// Exact null space of `T⁽¹⁾(z₀)` at a fixed generic point.
    Kernel,
}

/// Projection `⟨⟨h||ψ_AD⟩ = ∏_{i,j} [q^{2(h_i−1)}w_i/w_j] / [q⁻²w_i/w_j]`.
fn psi_ad_projection(
    h: &HeightProfile,
    inhom: &InhomParams,
    params: &ModelParams,
) -> ExactScalar {
    let n = inhom.n;
    let mut out = ExactScalar::one();
    for i in 0..n {
        for j in 0..n {
            let ratio = inhom.w[i].div_ref(&inhom.w[j]).expect("invertible");
            let num = params.brq(2 * (h.h[i] as i64 - 1), &ratio);
            let den = params.brq(-2, &ratio);
            out = out.mul_ref(&num.div_ref(&den).expect("generic q"));
        }
    }
    out
}

/// Dual projection `⟨ψ_AD||h⟩⟩ = ∏_{i,j} [q^{1−h_i}w_i/w_j] / [qw_i/w_j]`.
fn psi_ad_dual_projection(
    h: &HeightProfile,
    inhom: &InhomParams,
    params: &ModelParams,
) -> ExactScalar {
    let n = inhom.n;
    let mut out = ExactScalar::one();
    for i in 0..n {
        for j in 0..n {
            let ratio = inhom.w[i].div_ref(&inhom.w[j]).expect("invertible");
            let num = params.brq(1 - h.h[i] as i64, &ratio);
            let den = params.brq(1, &ratio);
            out = out.mul_ref(&num.div_ref(&den).expect("generic q"));
        }
    }
    out
}

/// The anti-diagonal-twist null vector, normalized so that its component
/// on `⇑…⇑` equals 1.
pub fn psi_ad(
    inhom: &InhomParams,
    params: &ModelParams,
    method: PsiAdMethod,
) -> Result<SpecialVector, SovError> {
    let n = inhom.n;
    let d_tot = 3usize.pow(n as u32);
    let components = match method {
        PsiAdMethod::Sov => {
            if !inhom.pairwise_distinct() {
                return Err(SovError::NotDistinct);
            }
            let mut v = vec![ExactScalar::zero(); d_tot];
            for h in HeightProfile::all(n) {
                let coeff = psi_ad_projection(&h, inhom, params)
                    .div_ref(&height_pairing(&h, inhom, params))
                    .expect("non-degenerate pairing");
                if coeff.is_zero() {
                    continue;
                }
                let state = height_state(&h, inhom, params)?;
                for (a, b) in v.iter_mut().zip(state.iter()) {
                    *a = a.add_ref(&b.mul_ref(&coeff));
                }
            }
            v
        }
        PsiAdMethod::Kernel => {
            let z0 = ExactScalar::ratio(7, 5);
            kernel_null_vector(&z0, TwistKind::AntiDiagonal, inhom, params)?
        }
    };
    // Normalize the ⇑…⇑ component to 1.
    let lead = components[0].clone();
    if lead.is_zero() {
        return Err(SovError::KernelDimension(0));
    }
    let inv = lead.inv().expect("non-zero");
    Ok(SpecialVector {
        twist: TwistKind::AntiDiagonal,
        inhomogeneous: true,
        components: components.iter().map(|x| x.mul_ref(&inv)).collect(),
        normalization: "leading-component-one".into(),
    })
}

/// The dual anti-diagonal null vector `⟨ψ_AD|`, from its separated-basis
/// projections.
pub fn psi_ad_dual(
    inhom: &InhomParams,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, SovError> {
    if !inhom.pairwise_distinct() {
        return Err(SovError::NotDistinct);
    }
    let n = inhom.n;
    let d_tot = 3usize.pow(n as u32);
    let mut u = vec![ExactScalar::zero(); d_tot];
    for h in HeightProfile::all(n) {
        let coeff = psi_ad_dual_projection(&h, inhom, params)
            .div_ref(&height_pairing(&h, inhom, params))
            .expect("non-degenerate pairing");
        if coeff.is_zero() {
            continue;
        }
        let state = dual_height_state(&h, inhom, params)?;
        for (a, b) in u.iter_mut().zip(state.iter()) {
            *a = a.add_ref(&b.mul_ref(&coeff));
        }
    }
    Ok(u)
}

/// Exact one-dimensional null space of `T⁽¹⁾(z₀)` restricted to the
/// magnetization-parity sector that can contain it; errors if the null
/// space is not a line.
fn kernel_null_vector(
    z0: &ExactScalar,
    twist: TwistKind,
    inhom: &InhomParams,
    params: &ModelParams,
) -> Result<Vec<ExactScalar>, SovError> {
    let n = inhom.n;
    let d_tot = 3usize.pow(n as u32);
    // The anti-diagonal T⁽¹⁾ maps each magnetization-parity sector to the
    // other; its null vector with (−1)^M = (−1)^N lives in one sector.
    let parity_of = |idx: usize| crate::transfer::magnetization_of(idx, n).rem_euclid(2);
    let want = (n as i64).rem_euclid(2);
    let cols: Vec<usize> = (0..d_tot).filter(|&i| parity_of(i) as i64 == want).collect();
    let rows: Vec<usize> = (0..d_tot)
        .filter(|&i| parity_of(i) as i64 != want)
        .collect();
    let mut block: Mat<ExactScalar> = Mat::zeros(rows.len(), cols.len());
    for (c, &col) in cols.iter().enumerate() {
        let mut e = vec![ExactScalar::zero(); d_tot];
        e[col] = ExactScalar::one();
        let t1e = apply_t1(z0, twist, params, inhom, &e);
        for (r, &row) in rows.iter().enumerate() {
            *block.at_mut(r, c) = t1e[row].clone();
        }
        for (idx, val) in t1e.iter().enumerate() {
            if parity_of(idx) as i64 == want && !val.is_zero() {
                return Err(SovError::KernelDimension(0));
            }
        }
    }
    let basis = block.kernel_basis();
    if basis.len() != 1 {
        return Err(SovError::KernelDimension(basis.len()));
    }
    let mut v = vec![ExactScalar::zero(); d_tot];
    for (c, &col) in cols.iter().enumerate() {
        v[col] = basis[0][c].clone();
    }
    Ok(v)
}

/// The eigenvalue `θ⁽²⁾(z) = −a(qz)d(z)` of `T⁽²⁾(z)` on the special
/// vectors.
pub fn theta2(z: &ExactScalar, params: &ModelParams, inhom: &InhomParams) -> ExactScalar {
    let qz = params.qs().mul_ref(z);
    a_fn(&qz, params, inhom).mul_ref(&d_fn(z, params, inhom)).neg_ref()
}

/// Verify that the special vector of the given twist is an exact null
/// vector of `T⁽¹⁾(z)` and an exact `θ⁽²⁾(z)`-eigenvector of `T⁽²⁾(z)`
/// at a random-looking rational point.
pub fn check_eigenvector(
    twist: TwistKind,
    inhom: &InhomParams,
    params: &ModelParams,
    z: &ExactScalar,
) -> Result<bool, SovError> {
    let v = match twist {
        TwistKind::Diagonal => psi_d(inhom, params).components,
        TwistKind::AntiDiagonal => psi_ad(inhom, params, PsiAdMethod::Sov)?.components,
    };
    let t1v = apply_t1(z, twist, params, inhom, &v);
    if t1v.iter().any(|x| !x.is_zero()) {
        return Ok(false);
    }
    let t2 = transfer(2, z, twist, params, inhom).expect("fusion holds");
    let t2v = t2.m.matvec(&v);
    let theta = theta2(z, params, inhom);
    Ok(t2v == v.iter().map(|x| x.mul_ref(&theta)).collect::<Vec<_>>())
}

/// Per-property outcome of the special-vector checks.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    /// Named check outcomes.
    pub checks: Vec<(String, bool)>,
}

impl PropertyReport {
    /// Whether every property holds.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn inverted(inhom: &InhomParams) -> InhomParams {
    InhomParams::new(
        inhom
            .w
            .iter()
            .map(|w| w.inv().expect("invertible"))
            .collect(),
    )
    .expect("invertible")
}

/// Check the structural properties of the special vectors: duality under
/// `w → w⁻¹` transposition, the `q → q⁻¹` relation, the exchange relation
/// under the braided R-matrix, translation covariance, and the spin
/// reversal / magnetization eigenrelations.
pub fn check_eigenvector_properties(
    twist: TwistKind,
    inhom: &InhomParams,
    params: &ModelParams,
) -> Result<PropertyReport, SovError> {
    let n = inhom.n;
    assert!(n <= 4, "property verification is capped at 4 sites");
    let mut checks = Vec::new();
    let vec_of = |inh: &InhomParams, pr: &ModelParams| -> Result<Vec<ExactScalar>, SovError> {
        Ok(match twist {
            TwistKind::Diagonal => psi_d(inh, pr).components,
            TwistKind::AntiDiagonal => psi_ad(inh, pr, PsiAdMethod::Sov)?.components,
        })
    };
    let v = vec_of(inhom, params)?;
    let w_inv = inverted(inhom);
    let v_winv = vec_of(&w_inv, params)?;
    // (i) ⟨ψ(w)| = |ψ(w⁻¹)⟩ᵗ.
    let dual = match twist {
        TwistKind::Diagonal => psi_d_dual(inhom, params),
        TwistKind::AntiDiagonal => psi_ad_dual(inhom, params)?,
    };
    checks.push(("dual-equals-inverted-transpose".into(), dual == v_winv));
    // (ii) q → q⁻¹ sends ψ(w) to ψ(w⁻¹).
    let flipped = ModelParams::new(Rational::one() / &params.q).expect("generic q");
    let v_qflip = vec_of(inhom, &flipped)?;
    checks.push(("q-inversion".into(), v_qflip == v_winv));
    // (iii) exchange relation at the first pair.
    if n >= 2 {
        let dims = vec![3usize; n];
        let ratio = inhom.w[0].div_ref(&inhom.w[1]).expect("invertible");
        let rc = crate::vertex::rcheck(crate::vertex::RKind::K22, &ratio, params);
        let lhs = apply_local_to_vec(&rc, &dims, &[0, 1], &v);
        let mut swapped = inhom.w.clone();
        swapped.swap(0, 1);
        let v_swap = vec_of(&InhomParams::new(swapped).expect("invertible"), params)?;
        let pref = params.brq(1, &ratio).mul_ref(&params.brq(2, &ratio));
        let rhs: Vec<ExactScalar> = v_swap.iter().map(|x| x.mul_ref(&pref)).collect();
        checks.push(("exchange".into(), lhs == rhs));
    }
    // (iv) translation covariance under the twisted shift.
    {
        let (_m, _f, sp) = crate::transfer::symmetry_ops(n, twist);
        let lhs = sp.m.matvec(&v);
        let mut rotated = vec![inhom.w[n - 1].clone()];
        rotated.extend_from_slice(&inhom.w[..n - 1]);
        let v_rot = vec_of(&InhomParams::new(rotated).expect("invertible"), params)?;
        let mut pref = ExactScalar::one();
        for j in 0..(n - 1) {
            let ratio = inhom.w[n - 1].div_ref(&inhom.w[j]).expect("invertible");
            pref = pref.mul_ref(
                &params
                    .brq(-1, &ratio)
                    .div_ref(&params.brq(1, &ratio))
                    .expect("generic"),
            );
        }
        let rhs: Vec<ExactScalar> = v_rot.iter().map(|x| x.mul_ref(&pref)).collect();
        checks.push(("translation-covariance".into(), lhs == rhs));
    }
    // (v) spin reversal and magnetization.
    {
        let (m, f, _sp) = crate::transfer::symmetry_ops(n, twist);
        match twist {
            TwistKind::Diagonal => {
                let mv = m.m.matvec(&v);
                checks.push(("zero-magnetization".into(), mv.iter().all(|x| x.is_zero())));
                checks.push(("spin-reversal-invariant".into(), f.m.matvec(&v) == v));
            }
            TwistKind::AntiDiagonal => {
                let sign = ExactScalar::from_int(if n % 2 == 0 { 1 } else { -1 });
                let scaled: Vec<ExactScalar> = v.iter().map(|x| x.mul_ref(&sign)).collect();
                let parity_ok = v.iter().enumerate().all(|(idx, x)| {
                    x.is_zero()
                        || crate::transfer::magnetization_of(idx, n).rem_euclid(2)
                            == (n as i64).rem_euclid(2)
                });
                checks.push(("magnetization-parity".into(), parity_ok));
                checks.push(("spin-reversal-sign".into(), f.m.matvec(&v) == scaled));
            }
        }
    }
    Ok(PropertyReport { checks })
}

/// The zero-energy state of the homogeneous chain with the given twist.
///
/// For the diagonal twist this is the homogeneous Bethe product rescaled
/// by `([q][q²])^{−N/2} [q]^{−N(N−1)}` (for odd `N` the single leftover
/// square root is divided out and the components are checked to be free of
/// it).  For the anti-diagonal twist it is the exact null line of the
/// homogeneous transfer matrix, normalized to 1 on `⇑…⇑`.
pub fn phi(
    twist: TwistKind,
    n: usize,
    params: &ModelParams,
) -> Result<SpecialVector, SovError> {
    assert!(n <= 6, "homogeneous special vectors are capped at 6 sites");
    let inhom = InhomParams::homogeneous(n);
    match twist {
        TwistKind::Diagonal => {
            let mut v = psi_d(&inhom, params).components;
            // [q]^{−N(N−1)}·([q][q²])^{−⌊N/2⌋}, with one further division
            // by the square root itself when N is odd.
            let mut scale = params
                .brqk(1)
                .pow(-((n * (n - 1)) as i64))
                .mul_ref(&params.sc(params.ext.clone()).pow(-((n / 2) as i64)));
            if n % 2 == 1 {
                // 1/r = r/(r²).
                scale = scale.mul_ref(&params.r_elem()).mul_ref(
                    &params.sc(params.ext.clone()).inv().expect("non-zero r²"),
                );
            }
            v = v.iter().map(|x| x.mul_ref(&scale)).collect();
            if v.iter().any(|x| !x.is_r_free()) {
                return Err(SovError::ExtensionResidue);
            }
            Ok(SpecialVector {
                twist,
                inhomogeneous: false,
                components: v,
                normalization: "square-root-cleared".into(),
            })
        }
        TwistKind::AntiDiagonal => {
            let z0 = ExactScalar::ratio(5, 7);
            let v = kernel_null_vector(&z0, twist, &inhom, params)?;
            let lead = v[0].clone();
            if lead.is_zero() {
                return Err(SovError::KernelDimension(0));
            }
            let inv = lead.inv().expect("non-zero");
            Ok(SpecialVector {
                twist,
                inhomogeneous: false,
                components: v.iter().map(|x| x.mul_ref(&inv)).collect(),
                normalization: "leading-component-one".into(),
            })
        }
    }
}

/// Null-space dimension of the diagonal-twist `T⁽¹⁾(z₀)` restricted to the
/// zero-magnetization sector (expected 1 for generic parameters).
pub fn diagonal_null_dimension(
    z0: &ExactScalar,
    inhom: &InhomParams,
    params: &ModelParams,
) -> usize {
    let n = inhom.n;
    let d_tot = 3usize.pow(n as u32);
    let sector: Vec<usize> = (0..d_tot)
        .filter(|&i| crate::transfer::magnetization_of(i, n) == 0)
        .collect();
    let mut block: Mat<ExactScalar> = Mat::zeros(sector.len(), sector.len());
    for (c, &col) in sector.iter().enumerate() {
        let mut e = vec![ExactScalar::zero(); d_tot];
        e[col] = ExactScalar::one();
        let t1e = apply_t1(z0, TwistKind::Diagonal, params, inhom, &e);
        for (r, &row) in sector.iter().enumerate() {
            *block.at_mut(r, c) = t1e[row].clone();
        }
    }
    block.kernel_basis().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::hamiltonian;

    fn params(p: i64, q: i64) -> ModelParams {
        ModelParams::new(Rational::new(p.into(), q.into())).unwrap()
    }

    fn inhom(ws: &[(i64, i64)]) -> InhomParams {
        InhomParams::new(ws.iter().map(|&(p, q)| ExactScalar::ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn height_state_basics() {
        let pr = params(2, 1);
        let ih = inhom(&[(3, 1)]);
        // h = 0 is the highest-weight state itself.
        let v0 = height_state(&HeightProfile::new(vec![0]), &ih, &pr).unwrap();
        assert_eq!(v0[0], ExactScalar::one());
        assert!(v0[1].is_zero() && v0[2].is_zero());
        // h = 1 is proportional to |0⟩.
        let v1 = height_state(&HeightProfile::new(vec![1]), &ih, &pr).unwrap();
        assert!(v1[0].is_zero() && v1[2].is_zero() && !v1[1].is_zero());
        // Single-site pairing is (−1)^h.
        for h in 0..=2u8 {
            let p = height_pairing(&HeightProfile::new(vec![h]), &ih, &pr);
            let want = ExactScalar::from_int(if h % 2 == 0 { 1 } else { -1 });
            assert_eq!(p, want);
        }
    }

    #[test]
    fn height_state_magnetization() {
        let pr = params(2, 1);
        let ih = inhom(&[(3, 1), (5, 1)]);
        let v = height_state(&HeightProfile::new(vec![2, 0]), &ih, &pr).unwrap();
        let (m, _f, _s) = crate::transfer::symmetry_ops(2, TwistKind::Diagonal);
        assert_eq!(m.m.matvec(&v), vec![ExactScalar::zero(); 9]);
    }

    #[test]
    fn separated_basis_structure() {
        let pr = params(2, 1);
        assert!(check_sov_structure(&inhom(&[(3, 1)]), &pr).unwrap());
        assert!(check_sov_structure(&inhom(&[(3, 1), (5, 1)]), &pr).unwrap());
        let pr2 = params(3, 2);
        assert!(check_sov_structure(&inhom(&[(2, 1), (5, 3), (7, 4)]), &pr2).unwrap());
    }

    #[test]
    fn diagonal_null_vector() {
        let pr = params(2, 1);
        let ih = inhom(&[(3, 1), (5, 1)]);
        let z = ExactScalar::ratio(7, 1);
        assert!(check_eigenvector(TwistKind::Diagonal, &ih, &pr, &z).unwrap());
        // Single site: ψ_D ∝ |0⟩ with zero magnetization.
        let ih1 = InhomParams::homogeneous(1);
        let v = psi_d(&ih1, &pr).components;
        assert!(v[0].is_zero() && v[2].is_zero() && !v[1].is_zero());
    }

    #[test]
    fn antidiagonal_null_vector_both_methods() {
        let pr = params(2, 1);
        for ws in [vec![(3i64, 1i64)], vec![(3, 1), (5, 1)], vec![(2, 1), (5, 3), (7, 4)]] {
            let ih = inhom(&ws);
            let a = psi_ad(&ih, &pr, PsiAdMethod::Sov).unwrap();
            let b = psi_ad(&ih, &pr, PsiAdMethod::Kernel).unwrap();
            assert_eq!(a.components, b.components, "N = {}", ws.len());
        }
    }

    #[test]
    fn antidiagonal_eigen_relations() {
        let pr = params(3, 2);
        let ih = inhom(&[(3, 1), (5, 1)]);
        let z = ExactScalar::ratio(9, 4);
        assert!(check_eigenvector(TwistKind::AntiDiagonal, &ih, &pr, &z).unwrap());
    }

    #[test]
    fn special_vector_properties() {
        let pr = params(2, 1);
        let ih = inhom(&[(3, 1), (5, 1)]);
        for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
            let rep = check_eigenvector_properties(tw, &ih, &pr).unwrap();
            assert!(rep.all_pass(), "{:?}: {:?}", tw, rep.checks);
        }
        let ih3 = inhom(&[(2, 1), (5, 3), (7, 4)]);
        for tw in [TwistKind::Diagonal, TwistKind::AntiDiagonal] {
            let rep = check_eigenvector_properties(tw, &ih3, &pr).unwrap();
            assert!(rep.all_pass(), "N=3 {:?}: {:?}", tw, rep.checks);
        }
    }

    #[test]
    fn homogeneous_zero_energy_states() {
        for (p, q) in [(2i64, 1i64), (3, 2)] {
            let pr = params(p, q);
            let x = pr.x();
            for n in [2usize, 3] {
                let h = hamiltonian(n, &x, TwistKind::Diagonal).unwrap();
                let pd = phi(TwistKind::Diagonal, n, &pr).unwrap();
                assert!(
                    h.m.matvec(&pd.components).iter().all(|v| v.is_zero()),
                    "H φ_D ≠ 0 at N={n}, q={p}/{q}"
                );
                let had = hamiltonian(n, &x, TwistKind::AntiDiagonal).unwrap();
                let pad = phi(TwistKind::AntiDiagonal, n, &pr).unwrap();
                assert_eq!(pad.components[0], ExactScalar::one());
                assert!(
                    had.m.matvec(&pad.components).iter().all(|v| v.is_zero()),
                    "H φ_AD ≠ 0 at N={n}, q={p}/{q}"
                );
            }
        }
    }

    #[test]
    fn phi_d_norm_counts_alternating_sign_matrices() {
        // ‖φ_D‖² = 2 at N = 2 and 6 + x² at N = 3.
        let pr = params(2, 1);
        let p2 = phi(TwistKind::Diagonal, 2, &pr).unwrap();
        let norm2: ExactScalar = p2
            .components
            .iter()
            .fold(ExactScalar::zero(), |acc, v| acc.add_ref(&v.mul_ref(v)));
        assert_eq!(norm2, ExactScalar::from_int(2));
        // The middle component (⇑⇓) equals the 1×1 count.
        assert_eq!(p2.components[2], ExactScalar::one());
        let p3 = phi(TwistKind::Diagonal, 3, &pr).unwrap();
        let norm3: ExactScalar = p3
            .components
            .iter()
            .fold(ExactScalar::zero(), |acc, v| acc.add_ref(&v.mul_ref(v)));
        let x = pr.sc(pr.x());
        assert_eq!(norm3, ExactScalar::from_int(6).add_ref(&x.mul_ref(&x)));
    }

    #[test]
    fn diagonal_null_space_is_a_line() {
        let pr = params(2, 1);
        let z0 = ExactScalar::ratio(11, 6);
        for ih in [inhom(&[(3, 1), (5, 1)]), InhomParams::homogeneous(3)] {
            assert_eq!(diagonal_null_dimension(&z0, &ih, &pr), 1);
        }
    }

    #[test]
    fn phi_ad_polynomial_components() {
        // Components of φ_AD interpolate to polynomials in x: evaluate at 5
        // rational q and check that the degree-4 interpolation through the
        // first 5 points reproduces a 6th value.
        let qs: [(i64, i64); 6] = [(2, 1), (3, 1), (3, 2), (5, 2), (4, 1), (5, 3)];
        let mut per_q: Vec<(Rational, Vec<ExactScalar>)> = Vec::new();
        for (p, q) in qs {
            let pr = params(p, q);
            per_q.push((pr.x(), phi(TwistKind::AntiDiagonal, 3, &pr).unwrap().components));
        }
        let dim = per_q[0].1.len();
        for comp in 0..dim {
            // Lagrange interpolation through the first five points.
            let pts: Vec<(Rational, Rational)> = per_q[..5]
                .iter()
                .map(|(x, v)| {
                    (x.clone(), v[comp].as_rational().expect("rational component"))
                })
                .collect();
            let (x6, v6) = (
                per_q[5].0.clone(),
                per_q[5].1[comp].as_rational().expect("rational component"),
            );
            let mut acc = Rational::from_integer(0.into());
            for i in 0..5 {
                let mut term = pts[i].1.clone();
                for j in 0..5 {
                    if i != j {
                        term = term * (&x6 - &pts[j].0) / (&pts[i].0 - &pts[j].0);
                    }
                }
                acc += term;
            }
            assert_eq!(acc, v6, "component {comp} is not degree ≤ 4 in x");
        }
    }
}
