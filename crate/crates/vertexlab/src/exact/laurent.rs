//! Univariate Laurent polynomials over the exact scalar ring, and rational
//! functions built from them (used for removable-singularity limits).

use super::matrix::{ExactDiv, Ring};
use super::scalar::{ExactScalar, Int, Rational};

/// A Laurent polynomial `Σ_k c_k z^k` with exact scalar coefficients.
///
/// Stored as the lowest exponent plus a dense coefficient run; the leading
/// and trailing coefficients are non-zero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    /// Exponent of the first stored coefficient.
    pub lo: i64,
    /// Coefficients of `z^lo, z^{lo+1}, …`.
    pub c: Vec<ExactScalar>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, c: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    /// A constant polynomial.
    pub fn constant(k: ExactScalar) -> Self {
        Self::from_parts(0, vec![k])
    }

    /// The monomial `k·z^e`.
    pub fn monomial(k: ExactScalar, e: i64) -> Self {
        Self::from_parts(e, vec![k])
    }

    /// Build and normalize (trim zero leading/trailing coefficients).
    pub fn from_parts(lo: i64, c: Vec<ExactScalar>) -> Self {
        let mut p = LaurentPoly { lo, c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let skip = self.c.iter().take_while(|x| x.is_zero()).count();
        if skip > 0 {
            self.c.drain(..skip);
            self.lo += skip as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    /// True iff zero.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Highest exponent (None for zero).
    pub fn hi(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.c.len() as i64 - 1)
        }
    }

    /// Coefficient of `z^e`.
    pub fn coeff(&self, e: i64) -> ExactScalar {
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            ExactScalar::zero()
        } else {
            self.c[(e - self.lo) as usize].clone()
        }
    }

    /// Sum.
    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().unwrap().max(other.hi().unwrap());
        let mut c = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            c.push(self.coeff(e).add_ref(&other.coeff(e)));
        }
        Self::from_parts(lo, c)
    }

    /// Difference.
    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Negation.
    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            lo: self.lo,
            c: self.c.iter().map(|x| x.neg_ref()).collect(),
        }
    }

    /// Product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![ExactScalar::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_parts(self.lo + other.lo, c)
    }

    /// Multiply by a scalar.
    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self::from_parts(self.lo, self.c.iter().map(|x| x.mul_ref(k)).collect())
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.c.len());
        for (i, a) in self.c.iter().enumerate() {
            let e = self.lo + i as i64;
            let factor = ExactScalar::from_rational(Rational::from_integer(Int::from(e)));
            c.push(a.mul_ref(&factor));
        }
        Self::from_parts(self.lo - 1, c)
    }

    /// Evaluate at an exact scalar (invertible if negative exponents occur).
    pub fn eval(&self, z: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        // Horner from the top, then restore the monomial offset.
        let mut acc = ExactScalar::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul_ref(z).add_ref(a);
        }
        acc.mul_ref(&z.pow(self.lo))
    }

    /// Exact division; panics if the quotient is not a Laurent polynomial.
    pub fn div_exact_ref(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "non-exact Laurent polynomial division");
        q
    }

    /// Long division over the coefficient field, returning `(q, r)` with
    /// `self = q·d + r` and `deg r < deg d` (degrees of the ordinary
    /// polynomial parts; monomials are units and never leave remainders).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let shift = self.lo - d.lo;
        let mut rem = self.c.clone();
        let dn = d.c.len();
        if rem.len() < dn {
            return (Self::zero(), self.clone());
        }
        let lead_inv = d.c[dn - 1].inv().expect("non-zero leading coefficient");
        let qn = rem.len() - dn + 1;
        let mut q = vec![ExactScalar::zero(); qn];
        for k in (0..qn).rev() {
            let f = rem[k + dn - 1].mul_ref(&lead_inv);
            if f.is_zero() {
                continue;
            }
            q[k] = f.clone();
            for (j, dc) in d.c.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&f.mul_ref(dc));
            }
        }
        (
            Self::from_parts(shift, q),
            Self::from_parts(self.lo, rem),
        )
    }

    /// Monic greatest common divisor (of the ordinary polynomial parts,
    /// normalized to lowest exponent 0 and leading coefficient 1).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        a.lo = 0;
        b.lo = 0;
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
            b.lo = 0;
        }
        if a.is_zero() {
            return a;
        }
        a.lo = 0;
        let lead_inv = a.c.last().unwrap().inv().expect("non-zero leading coefficient");
        a.scale(&lead_inv)
    }

    /// The order of vanishing at `z = 1` (number of `(z − 1)` factors).
    pub fn vanishing_order_at_one(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = LaurentPoly::from_parts(
            0,
            vec![ExactScalar::from_int(-1), ExactScalar::one()],
        );
        let mut p = self.clone();
        let mut order = 0;
        while p.eval(&ExactScalar::one()).is_zero() {
            p = p.div_exact_ref(&lin);
            order += 1;
        }
        order
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
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
        LaurentPoly::is_zero(self)
    }
}

impl ExactDiv for LaurentPoly {
    fn div_exact(&self, d: &Self) -> Self {
        self.div_exact_ref(d)
    }
}

/// A ratio of Laurent polynomials, kept reduced; field arithmetic for
/// exact evaluation of removable limits.
#[derive(Clone, Debug)]
pub struct RationalFn {
    /// Numerator.
    pub num: LaurentPoly,
    /// Denominator (non-zero).
    pub den: LaurentPoly,
}

impl RationalFn {
    /// Build `num/den`, reducing by the polynomial gcd.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFn {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_zero() && g.c.len() > 1 {
            // The gcd is normalized to lowest exponent 0, so the generic
            // exact division keeps each operand's monomial offset intact.
            return RationalFn {
                num: num.div_exact_ref(&g),
                den: den.div_exact_ref(&g),
            };
        }
        RationalFn { num, den }
    }

    /// Embed a polynomial.
    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Embed a scalar.
    pub fn from_scalar(k: ExactScalar) -> Self {
        Self::from_poly(LaurentPoly::constant(k))
    }

    /// Zero test.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sum.
    pub fn add_ref(&self, other: &Self) -> Self {
        Self::new(
            self.num
                .mul_ref(&other.den)
                .add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
    }

    /// Difference.
    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Negation.
    pub fn neg_ref(&self) -> Self {
        RationalFn {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    /// Product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul_ref(&other.num),
            self.den.mul_ref(&other.den),
        )
    }

    /// Reciprocal.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RationalFn {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// Quotient.
    pub fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    /// Evaluate at a point where the denominator does not vanish.
    pub fn eval(&self, z: &ExactScalar) -> ExactScalar {
        let d = self.den.eval(z);
        self.num.eval(z).div_ref(&d).expect("denominator vanishes")
    }

    /// Evaluate the limit at `z = 1`, cancelling matching `(z − 1)` factors
    /// from numerator and denominator; panics if the limit is not finite.
    pub fn limit_at_one(&self) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let lin = LaurentPoly::from_parts(
            0,
            vec![ExactScalar::from_int(-1), ExactScalar::one()],
        );
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            let dv = den.eval(&ExactScalar::one());
            if !dv.is_zero() {
                let nv = num.eval(&ExactScalar::one());
                return nv.div_ref(&dv).expect("finite limit");
            }
            assert!(
                num.eval(&ExactScalar::one()).is_zero(),
                "pole at z = 1 is not removable"
            );
            num = num.div_exact_ref(&lin);
            den = den.div_exact_ref(&lin);
        }
    }

    /// Power-series coefficient of `z^k` around `z = 0` (requires the
    /// reduced denominator to be regular and non-vanishing at 0).
    pub fn series_coeff(&self, k: i64) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        // Shift so the denominator is an ordinary polynomial with den(0) ≠ 0.
        let shift = den.lo;
        num.lo -= shift;
        den.lo -= shift;
        assert!(den.lo == 0 && !den.c[0].is_zero(), "series requires den(0) != 0");
        assert!(num.lo >= 0, "series of a pole at z = 0");
        let d0_inv = den.c[0].inv().unwrap();
        let mut coeffs: Vec<ExactScalar> = Vec::new();
        for m in 0..=k {
            let mut acc = num.coeff(m);
            for (j, cj) in coeffs.iter().enumerate() {
                acc = acc.sub_ref(&cj.mul_ref(&den.coeff(m - j as i64)));
            }
            coeffs.push(acc.mul_ref(&d0_inv));
        }
        coeffs.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64], lo: i64) -> LaurentPoly {
        LaurentPoly::from_parts(
            lo,
            coeffs.iter().map(|&k| ExactScalar::from_int(k)).collect(),
        )
    }

    #[test]
    fn derivative_of_monomials() {
        // z² → 2z
        assert_eq!(p(&[1], 2).derivative(), p(&[2], 1));
        // z⁻¹ → −z⁻²
        assert_eq!(p(&[1], -1).derivative(), p(&[-1], -2));
        // qz − q⁻¹z⁻¹ at q=2 → 2 + (1/2) z⁻²
        let qz = LaurentPoly::from_parts(
            -1,
            vec![ExactScalar::ratio(-1, 2), ExactScalar::zero(), ExactScalar::from_int(2)],
        );
        let expect = LaurentPoly::from_parts(
            -2,
            vec![ExactScalar::ratio(1, 2), ExactScalar::zero(), ExactScalar::from_int(2)],
        );
        assert_eq!(qz.derivative(), expect);
    }

    #[test]
    fn product_and_eval_agree() {
        let a = p(&[1, 2, 3], -1);
        let b = p(&[-2, 0, 5], 0);
        let prod = a.mul_ref(&b);
        let z = ExactScalar::ratio(3, 7);
        assert_eq!(prod.eval(&z), a.eval(&z).mul_ref(&b.eval(&z)));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[1, 2, 3], -2);
        let b = p(&[-1, 1], 1);
        let prod = a.mul_ref(&b);
        assert_eq!(prod.div_exact_ref(&b), a);
        assert_eq!(prod.div_exact_ref(&a), b);
    }

    #[test]
    #[should_panic(expected = "non-exact")]
    fn non_exact_division_panics() {
        let a = p(&[1, 1], 0); // 1 + z
        let b = p(&[1, 0, 1], 0); // 1 + z²
        let _ = b.div_exact_ref(&a);
    }

    #[test]
    fn removable_limit_is_cancelled_exactly() {
        // (z² − 1)/(z − 1) → 2 at z = 1.
        let f = RationalFn::new(p(&[-1, 0, 1], 0), p(&[-1, 1], 0));
        assert_eq!(f.limit_at_one(), ExactScalar::from_int(2));
        // (z − 1)²·5 / ((z − 1)(z + 1)) → 0.
        let g = RationalFn::new(
            p(&[-1, 1], 0).mul_ref(&p(&[-1, 1], 0)).scale(&ExactScalar::from_int(5)),
            p(&[-1, 1], 0).mul_ref(&p(&[1, 1], 0)),
        );
        assert_eq!(g.limit_at_one(), ExactScalar::zero());
    }

    #[test]
    fn series_of_geometric_function() {
        // 1/(1 − z) = 1 + z + z² + …
        let f = RationalFn::new(p(&[1], 0), p(&[1, -1], 0));
        for k in 0..5 {
            assert_eq!(f.series_coeff(k), ExactScalar::one());
        }
    }

    #[test]
    fn rational_arithmetic_matches_pointwise() {
        let f = RationalFn::new(p(&[1, 3], -1), p(&[2, 1], 0));
        let g = RationalFn::new(p(&[5, 0, 1], 0), p(&[1, 1], 1));
        let z = ExactScalar::ratio(5, 3);
        let sum = f.add_ref(&g);
        assert_eq!(sum.eval(&z), f.eval(&z).add_ref(&g.eval(&z)));
        let prod = f.mul_ref(&g);
        assert_eq!(prod.eval(&z), f.eval(&z).mul_ref(&g.eval(&z)));
        let quot = f.div_ref(&g);
        assert_eq!(quot.eval(&z), f.eval(&z).div_ref(&g.eval(&z)).unwrap());
    }
}
