//! The scalar ring `Q(i)[r]` with a context-dependent rational value of `r²`.

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational (always stored reduced with positive
/// denominator by the `num` crate).
pub type Rational = BigRational;

/// Errors produced by scalar arithmetic.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// `bracket` was called on a non-invertible scalar.
    #[error("bracket of non-unit")]
    BracketOfNonUnit,
    /// Division by a scalar whose norm form vanishes.
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// An element `a + b·i + c·r + d·i·r` of `Q(i)` extended by a formal square
/// root `r` with `r²` equal to a fixed rational constant.
///
/// The extension constant is carried per value: scalars that do not involve
/// `r` (i.e. `c = d = 0`) are compatible with every context, while scalars
/// with a non-zero `r` part must agree on the value of `r²` before they can
/// be combined.  Mixing two incompatible extensions is a programming error
/// and panics.
#[derive(Clone, Debug)]
pub struct ExactScalar {
    /// Coefficient of `1`.
    pub a: Rational,
    /// Coefficient of `i`.
    pub b: Rational,
    /// Coefficient of `r`.
    pub c: Rational,
    /// Coefficient of `i·r`.
    pub d: Rational,
    /// The rational value of `r²`; `None` for values with `c = d = 0`.
    pub ext: Option<Rational>,
}

impl ExactScalar {
    /// The zero scalar.
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// The unit scalar.
    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// Embed a machine integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(Int::from(n)))
    }

    /// Embed a rational number.
    pub fn from_rational(a: Rational) -> Self {
        ExactScalar {
            a,
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::zero(),
            ext: None,
        }
    }

    /// The rational `p/q` as a scalar.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(Int::from(p), Int::from(q)))
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        ExactScalar {
            a: Rational::zero(),
            b: Rational::one(),
            c: Rational::zero(),
            d: Rational::zero(),
            ext: None,
        }
    }

    /// The formal square root `r` for the given value of `r²`.
    pub fn r(ext: Rational) -> Self {
        ExactScalar {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::one(),
            d: Rational::zero(),
            ext: Some(ext),
        }
    }

    /// True iff all four coordinates vanish.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True iff the value lies in `Q` (no `i` and no `r` part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True iff the value has no `r` part (lies in `Q(i)`).
    pub fn is_r_free(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// The rational part, if the value lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Join the extension constants of two operands, panicking on a genuine
    /// mismatch (both operands carry `r` parts over different `r²`).
    fn join_ext(&self, other: &Self) -> Option<Rational> {
        match (&self.ext, &other.ext) {
            (Some(e1), Some(e2)) => {
                if e1 == e2 {
                    Some(e1.clone())
                } else if other.is_r_free() {
                    Some(e1.clone())
                } else if self.is_r_free() {
                    Some(e2.clone())
                } else {
                    panic!("incompatible quadratic extension constants: {e1} vs {e2}");
                }
            }
            (Some(e), None) => Some(e.clone()),
            (None, e) => e.clone(),
        }
    }

    fn normalized(mut self) -> Self {
        if self.c.is_zero() && self.d.is_zero() {
            self.ext = None;
        }
        self
    }

    /// Sum of two scalars.
    pub fn add_ref(&self, other: &Self) -> Self {
        ExactScalar {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c,
            d: &self.d + &other.d,
            ext: self.join_ext(other),
        }
        .normalized()
    }

    /// Difference of two scalars.
    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Additive inverse.
    pub fn neg_ref(&self) -> Self {
        ExactScalar {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
            ext: self.ext.clone(),
        }
    }

    /// Product of two scalars: `(g₁ + h₁r)(g₂ + h₂r) = (g₁g₂ + r²·h₁h₂) +
    /// (g₁h₂ + h₁g₂)r` with Gaussian-rational components `g`, `h`.
    pub fn mul_ref(&self, other: &Self) -> Self {
        // Complex multiplication helpers on (re, im) pairs.
        let cm = |x1: &Rational, y1: &Rational, x2: &Rational, y2: &Rational| {
            (x1 * x2 - y1 * y2, x1 * y2 + y1 * x2)
        };
        let ext = self.join_ext(other);
        let (gg_re, gg_im) = cm(&self.a, &self.b, &other.a, &other.b);
        let (hh_re, hh_im) = cm(&self.c, &self.d, &other.c, &other.d);
        let (gh_re, gh_im) = cm(&self.a, &self.b, &other.c, &other.d);
        let (hg_re, hg_im) = cm(&self.c, &self.d, &other.a, &other.b);
        let (a, b) = match &ext {
            Some(e) => (gg_re + e * hh_re, gg_im + e * hh_im),
            None => {
                debug_assert!(hh_re.is_zero() && hh_im.is_zero());
                (gg_re, gg_im)
            }
        };
        ExactScalar {
            a,
            b,
            c: gh_re + hg_re,
            d: gh_im + hg_im,
            ext,
        }
        .normalized()
    }

    /// Multiplicative inverse, if the norm form is non-zero.
    pub fn inv(&self) -> Result<Self, ExactError> {
        // First clear the r part: (g + hr)⁻¹ = (g − hr) / (g² − r²·h²).
        let conj = ExactScalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
            ext: self.ext.clone(),
        };
        let norm_r = self.mul_ref(&conj);
        debug_assert!(norm_r.is_r_free());
        // Then invert the Gaussian rational g via its complex conjugate.
        let denom = &norm_r.a * &norm_r.a + &norm_r.b * &norm_r.b;
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let g_inv = ExactScalar {
            a: &norm_r.a / &denom,
            b: -&norm_r.b / &denom,
            c: Rational::zero(),
            d: Rational::zero(),
            ext: None,
        };
        Ok(conj.mul_ref(&g_inv))
    }

    /// Division; errors on a zero divisor.
    pub fn div_ref(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power (negative exponents invert; `0⁰ = 1`).
    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self
                .inv()
                .expect("negative power of non-invertible scalar")
                .pow(-n);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Scale by a rational.
    pub fn scale(&self, k: &Rational) -> Self {
        ExactScalar {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
            ext: self.ext.clone(),
        }
        .normalized()
    }

    /// Complex conjugate (`i → −i`, fixing `r`).
    pub fn conj_i(&self) -> Self {
        ExactScalar {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
            ext: self.ext.clone(),
        }
    }

    /// Approximate the value as `f64`, using the given square root for `r`.
    pub fn to_f64(&self) -> f64 {
        let rat = |x: &Rational| -> f64 {
            let n = x.numer();
            let d = x.denom();
            // Good enough for spectrum probes: convert via string for
            // moderate sizes.
            n.to_string().parse::<f64>().unwrap_or(f64::NAN)
                / d.to_string().parse::<f64>().unwrap_or(f64::NAN)
        };
        let r = self.ext.as_ref().map(|e| rat(e).sqrt()).unwrap_or(0.0);
        debug_assert!(self.b.is_zero() && self.d.is_zero(), "complex value in to_f64");
        rat(&self.a) + rat(&self.c) * r
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b || self.c != other.c || self.d != other.d {
            return false;
        }
        if self.is_r_free() {
            return true;
        }
        self.ext == other.ext
    }
}

impl Eq for ExactScalar {}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(format!("{}", self.a));
        }
        if !self.b.is_zero() {
            parts.push(format!("{}*i", self.b));
        }
        if !self.c.is_zero() {
            parts.push(format!("{}*r", self.c));
        }
        if !self.d.is_zero() {
            parts.push(format!("{}*i*r", self.d));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$impl(rhs)
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$impl(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.div_ref(rhs).expect("division by zero scalar")
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

/// The bracket `[z] = z − z⁻¹`.
pub fn bracket(z: &ExactScalar) -> Result<ExactScalar, ExactError> {
    let inv = z.inv().map_err(|_| ExactError::BracketOfNonUnit)?;
    Ok(z.sub_ref(&inv))
}

/// Draw a non-zero random rational with numerator and denominator bounded by
/// `max_denom` and a uniformly random sign.
pub fn rand_rational<R: Rng + ?Sized>(rng: &mut R, max_denom: u64) -> Rational {
    let num = rng.gen_range(1..=max_denom) as i64;
    let den = rng.gen_range(1..=max_denom) as i64;
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(Int::from(sign * num), Int::from(den))
}

/// Draw a non-zero random rational-valued scalar.
pub fn rand_scalar<R: Rng + ?Sized>(rng: &mut R, max_denom: u64) -> ExactScalar {
    ExactScalar::from_rational(rand_rational(rng, max_denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r2() -> Rational {
        // r² = 3/2 in these tests.
        Rational::new(Int::from(3), Int::from(2))
    }

    #[test]
    fn bracket_fixed_points_and_simple_value() {
        assert!(bracket(&ExactScalar::from_int(1)).unwrap().is_zero());
        assert!(bracket(&ExactScalar::from_int(-1)).unwrap().is_zero());
        assert_eq!(
            bracket(&ExactScalar::from_int(2)).unwrap(),
            ExactScalar::ratio(3, 2)
        );
        assert_eq!(
            bracket(&ExactScalar::zero()),
            Err(ExactError::BracketOfNonUnit)
        );
    }

    #[test]
    fn bracket_is_odd_under_inversion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let z = rand_scalar(&mut rng, 100);
            let lhs = bracket(&z).unwrap();
            let rhs = bracket(&z.inv().unwrap()).unwrap().neg_ref();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn extension_arithmetic_squares_to_constant() {
        let r = ExactScalar::r(r2());
        let sq = r.mul_ref(&r);
        assert_eq!(sq, ExactScalar::from_rational(r2()));
        // (2 + r)(2 − r) = 4 − 3/2 = 5/2.
        let two = ExactScalar::from_int(2);
        let prod = two.add_ref(&r).mul_ref(&two.sub_ref(&r));
        assert_eq!(prod, ExactScalar::ratio(5, 2));
    }

    #[test]
    fn inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = rand_scalar(&mut rng, 50);
            let h = rand_scalar(&mut rng, 50);
            let i = ExactScalar::i();
            let r = ExactScalar::r(r2());
            // z = g + h·i + (g−h)·r + h·i·r exercises all four coordinates.
            let z = g
                .add_ref(&h.mul_ref(&i))
                .add_ref(&g.sub_ref(&h).mul_ref(&r))
                .add_ref(&h.mul_ref(&i).mul_ref(&r));
            if z.is_zero() {
                continue;
            }
            if let Ok(zi) = z.inv() {
                assert_eq!(z.mul_ref(&zi), ExactScalar::one());
            }
        }
    }

    #[test]
    fn powers_match_repeated_multiplication() {
        let z = ExactScalar::ratio(3, 7);
        let mut acc = ExactScalar::one();
        for k in 0..=5 {
            assert_eq!(z.pow(k), acc);
            acc = acc.mul_ref(&z);
        }
        assert_eq!(z.pow(-2), z.pow(2).inv().unwrap());
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = ExactScalar::i();
        assert_eq!(i.mul_ref(&i), ExactScalar::from_int(-1));
    }

    #[test]
    #[should_panic(expected = "incompatible quadratic extension")]
    fn mixing_extensions_panics() {
        let r1 = ExactScalar::r(Rational::from_integer(Int::from(2)));
        let r2 = ExactScalar::r(Rational::from_integer(Int::from(3)));
        let _ = r1.mul_ref(&r2);
    }
}
