//! Generating polynomials: big-integer coefficients in `t` and optionally
//! the refinement variables `y`, `z` (negative exponents permitted, as the
//! twist variable `y` enters symmetrically as `y` and `y⁻¹`).

use super::matrix::{ExactDiv, Ring};
use super::scalar::{ExactScalar, Int, Rational};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Hard cap on the total degree of any stored monomial; exceeding it is a
/// programming error (silent truncation is never acceptable here).
pub const GENPOLY_DEGREE_CAP: i32 = 256;

/// Sparse polynomial `Σ c · t^a y^b z^c` with big-integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    /// Map from exponent tuple `(t, y, z)` to non-zero coefficient.
    pub terms: BTreeMap<(i32, i32, i32), Int>,
}

impl GenPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        GenPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::constant(Int::one())
    }

    /// A constant polynomial.
    pub fn constant(k: Int) -> Self {
        let mut p = Self::zero();
        if !k.is_zero() {
            p.terms.insert((0, 0, 0), k);
        }
        p
    }

    /// The monomial `k · t^a y^b z^c`.
    pub fn monomial(k: Int, a: i32, b: i32, c: i32) -> Self {
        check_cap(a, b, c);
        let mut p = Self::zero();
        if !k.is_zero() {
            p.terms.insert((a, b, c), k);
        }
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Int::one(), 1, 0, 0)
    }

    /// The variable `y` (or `y⁻¹` with `e = −1`).
    pub fn y_pow(e: i32) -> Self {
        Self::monomial(Int::one(), 0, e, 0)
    }

    /// The variable `z` (or a power of it).
    pub fn z_pow(e: i32) -> Self {
        Self::monomial(Int::one(), 0, 0, e)
    }

    /// True iff zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^a y^b z^c`.
    pub fn coeff(&self, a: i32, b: i32, c: i32) -> Int {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_else(Int::zero)
    }

    fn insert_add(&mut self, key: (i32, i32, i32), val: Int) {
        if val.is_zero() {
            return;
        }
        check_cap(key.0, key.1, key.2);
        let entry = self.terms.entry(key).or_insert_with(Int::zero);
        *entry += val;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Sum.
    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_add(*k, v.clone());
        }
        out
    }

    /// Difference.
    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_add(*k, -v.clone());
        }
        out
    }

    /// Negation.
    pub fn neg_ref(&self) -> Self {
        GenPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    /// Product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                out.insert_add(
                    (k1.0 + k2.0, k1.1 + k2.1, k1.2 + k2.2),
                    v1.clone() * v2.clone(),
                );
            }
        }
        out
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|(key, v)| (*key, v.clone() * k.clone()))
                .collect(),
        }
    }

    /// Evaluate at rational arguments.
    pub fn eval_rational(&self, t: &Rational, y: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b, c), v) in &self.terms {
            acc += Rational::from_integer(v.clone())
                * rat_pow(t, *a)
                * rat_pow(y, *b)
                * rat_pow(z, *c);
        }
        acc
    }

    /// Evaluate at exact-scalar arguments (needed for `y = i`).
    pub fn eval_scalar(&self, t: &ExactScalar, y: &ExactScalar, z: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for ((a, b, c), v) in &self.terms {
            let term = ExactScalar::from_rational(Rational::from_integer(v.clone()))
                .mul_ref(&t.pow(*a as i64))
                .mul_ref(&y.pow(*b as i64))
                .mul_ref(&z.pow(*c as i64));
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Substitute `y → y⁻¹` (and fix `t`, `z`).
    pub fn invert_y(&self) -> Self {
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b, c), v)| ((*a, -*b, *c), v.clone()))
                .collect(),
        }
    }

    /// Maximum total degree over stored monomials (0 for the zero poly).
    pub fn total_degree(&self) -> i32 {
        self.terms
            .keys()
            .map(|(a, b, c)| a.abs() + b.abs() + c.abs())
            .max()
            .unwrap_or(0)
    }

    /// Leading term in lexicographic order on exponent tuples.
    fn leading(&self) -> Option<((i32, i32, i32), &Int)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Serialize as sorted `[[a, b, c], "coefficient"]` pairs.
    pub fn to_sorted_pairs(&self) -> Vec<([i32; 3], String)> {
        self.terms
            .iter()
            .map(|((a, b, c), v)| ([*a, *b, *c], v.to_string()))
            .collect()
    }
}

fn check_cap(a: i32, b: i32, c: i32) {
    assert!(
        a.abs() + b.abs() + c.abs() <= GENPOLY_DEGREE_CAP,
        "generating-polynomial degree cap ({GENPOLY_DEGREE_CAP}) exceeded"
    );
}

fn rat_pow(x: &Rational, e: i32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let p = x.numer().pow(e.unsigned_abs());
    let q = x.denom().pow(e.unsigned_abs());
    if e > 0 {
        Rational::new(p, q)
    } else {
        Rational::new(q, p)
    }
}

impl Ring for GenPoly {
    fn zero() -> Self {
        GenPoly::zero()
    }
    fn one() -> Self {
        GenPoly::one()
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
        GenPoly::is_zero(self)
    }
}

impl ExactDiv for GenPoly {
    /// Exact multivariate (Laurent) division by repeated cancellation of
    /// lexicographic leading terms; panics if the division is not exact.
    fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = GenPoly::zero();
        let (dk, dv) = d.leading().map(|(k, v)| (k, v.clone())).unwrap();
        // Any exact quotient's exponents are bounded coordinate-wise by the
        // exponent ranges of dividend and divisor; leaving that box means
        // the division cannot terminate (i.e. it is not exact).
        let coord_min = |p: &GenPoly, i: usize| {
            p.terms
                .keys()
                .map(|k| [k.0, k.1, k.2][i])
                .min()
                .unwrap_or(0)
        };
        let coord_max = |p: &GenPoly, i: usize| {
            p.terms
                .keys()
                .map(|k| [k.0, k.1, k.2][i])
                .max()
                .unwrap_or(0)
        };
        let lower: Vec<i32> = (0..3).map(|i| coord_min(self, i) - coord_max(d, i)).collect();
        while let Some((rk, rv)) = rem.leading().map(|(k, v)| (k, v.clone())) {
            let key_probe = [rk.0 - dk.0, rk.1 - dk.1, rk.2 - dk.2];
            assert!(
                (0..3).all(|i| key_probe[i] >= lower[i]),
                "non-exact division in generating-polynomial elimination"
            );
            let (q, r) = num::integer::div_rem(rv.clone(), dv.clone());
            assert!(
                r.is_zero(),
                "non-exact division in generating-polynomial elimination"
            );
            let key = (rk.0 - dk.0, rk.1 - dk.1, rk.2 - dk.2);
            let mono = GenPoly::monomial(q, key.0, key.1, key.2);
            quo = quo.add_ref(&mono);
            rem = rem.sub_ref(&mono.mul_ref(d));
        }
        quo
    }
}

impl fmt::Display for GenPoly {
    /// Human form like `6 + t` or `1 + 2*t*y^-1`, in ascending
    /// lexicographic order of `(t, y, z)` exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b, c), v) in &self.terms {
            let mag = v.abs();
            if first {
                if v.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if v.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !(mag.is_one() && (*a != 0 || *b != 0 || *c != 0)) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("t", *a), ("y", *b), ("z", *c)] {
                if e == 1 {
                    factors.push(name.to_string());
                } else if e != 0 {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Mat;

    fn t() -> GenPoly {
        GenPoly::t()
    }

    fn c(k: i64) -> GenPoly {
        GenPoly::constant(Int::from(k))
    }

    #[test]
    fn display_matches_expected_forms() {
        assert_eq!(format!("{}", c(6).add_ref(&t())), "6 + t");
        assert_eq!(format!("{}", GenPoly::zero()), "0");
        assert_eq!(
            format!("{}", c(1).add_ref(&t().scale(&Int::from(2)))),
            "1 + 2*t"
        );
        assert_eq!(format!("{}", GenPoly::y_pow(-1)), "y^-1");
    }

    #[test]
    fn exact_division_round_trips() {
        let a = c(3).add_ref(&t()).add_ref(&GenPoly::y_pow(2));
        let b = c(-1).add_ref(&t().mul_ref(&GenPoly::z_pow(1)));
        let prod = a.mul_ref(&b);
        assert_eq!(prod.div_exact(&b), a);
        assert_eq!(prod.div_exact(&a), b);
    }

    #[test]
    #[should_panic(expected = "non-exact")]
    fn non_exact_division_panics() {
        let a = c(1).add_ref(&t());
        let b = c(1).add_ref(&t().mul_ref(&t()));
        let _ = b.div_exact(&a);
    }

    #[test]
    fn bareiss_determinant_over_polynomials() {
        // det [[1, 2], [2, 6 + t]] = 2 + t.
        let m = Mat::from_entries(2, 2, vec![c(1), c(2), c(2), c(6).add_ref(&t())]);
        assert_eq!(m.det_exact(), c(2).add_ref(&t()));
    }

    #[test]
    fn bareiss_matches_cofactor_on_random_grid() {
        // 3×3 with mixed variables; compare against explicit cofactor sum.
        let entries: Vec<GenPoly> = (0..9)
            .map(|k| {
                c(k + 1)
                    .add_ref(&t().scale(&Int::from((k * k) % 5)))
                    .add_ref(&GenPoly::y_pow(1).scale(&Int::from(k % 3)))
            })
            .collect();
        let m = Mat::from_entries(3, 3, entries.clone());
        let det = m.det_exact();
        let minor = |r: usize, cidx: usize| -> GenPoly {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != cidx).collect();
            entries[rows[0] * 3 + cols[0]]
                .mul_ref(&entries[rows[1] * 3 + cols[1]])
                .sub_ref(&entries[rows[0] * 3 + cols[1]].mul_ref(&entries[rows[1] * 3 + cols[0]]))
        };
        let mut expect = GenPoly::zero();
        for j in 0..3 {
            let term = entries[j].mul_ref(&minor(0, j));
            expect = if j % 2 == 0 {
                expect.add_ref(&term)
            } else {
                expect.sub_ref(&term)
            };
        }
        assert_eq!(det, expect);
    }

    #[test]
    fn evaluation_and_y_inversion() {
        let p = c(2).add_ref(&GenPoly::y_pow(1)).add_ref(&GenPoly::y_pow(-1));
        assert_eq!(p.invert_y(), p);
        let val = p.eval_rational(
            &Rational::one(),
            &Rational::new(Int::from(3), Int::from(1)),
            &Rational::one(),
        );
        assert_eq!(val, Rational::new(Int::from(16), Int::from(3)));
    }

    #[test]
    #[should_panic(expected = "degree cap")]
    fn degree_cap_is_enforced() {
        let _ = GenPoly::monomial(Int::one(), 300, 0, 0);
    }
}
