//! Exact scalar arithmetic and exact linear algebra.
//!
//! Everything in this module is pure and immutable after construction; all
//! values are safe to share across threads.

mod genpoly;
mod laurent;
mod matrix;
mod scalar;

pub use genpoly::GenPoly;
pub use laurent::{LaurentPoly, RationalFn};
pub use matrix::{
    apply_local_to_vec, embed_op, pfaffian_expand, ExactDiv, Mat, Ring, SquareMatrix,
};
pub use scalar::{
    bracket, rand_rational, rand_scalar, ExactError, ExactScalar, Int, Rational,
};

/// Binomial coefficient `C(n, k)` as a big integer; zero outside the
/// triangle (negative `k` or `k > n`).
pub fn binomial(n: i64, k: i64) -> Int {
    use num::{One, Zero};
    if k < 0 || k > n || n < 0 {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * Int::from(n - j) / Int::from(j + 1);
    }
    acc
}
