//! Exact univariate polynomials with arbitrary-precision integer
//! coefficients, stored sparsely as `exponent -> coefficient`.
//!
//! Besides ring arithmetic this module carries the small amount of exact
//! algebra the numeric layer leans on: exact division, primitive gcd,
//! square-free decomposition, and exact sign evaluation at dyadic points.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ c_e x^e` with no stored zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    terms: BTreeMap<usize, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn monomial(coef: impl Into<BigInt>, exp: usize) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        SparsePolynomial { terms }
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeats and dropping
    /// zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut p = SparsePolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense ascending coefficients `c_0, c_1, ...`.
    pub fn from_dense(coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate())
    }

    fn add_term(&mut self, exp: usize, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// Multiplies by `x^k`.
    pub fn multiply_by_power(&self, k: usize) -> Self {
        SparsePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scalar_multiply(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        SparsePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// Drops the factor `x^j` where `j` is the lowest exponent.
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        match self.lowest_exponent() {
            None | Some(0) => (0, self.clone()),
            Some(j) => (
                j,
                SparsePolynomial {
                    terms: self
                        .terms
                        .iter()
                        .map(|(&e, c)| (e - j, c.clone()))
                        .collect(),
                },
            ),
        }
    }

    pub fn derivative(&self) -> Self {
        SparsePolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * BigInt::from(e)))
                .collect(),
        }
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coefficient().is_some_and(Signed::is_negative) {
            g = -g;
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, c / &g)).collect(),
        }
    }

    /// Exact quotient `self / divisor` in `Z[x]`, or `None` when the division
    /// leaves a remainder or needs fractions.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        let lb = divisor.leading_coefficient()?.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                return None;
            }
            let lr = rem.leading_coefficient().unwrap();
            let (q, r) = lr.div_rem(&lb);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(q, dr - db);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Pseudo-remainder: returns `(rem, steps)` with
    /// `lc(b)^steps * self ≡ rem (mod b)` and `deg rem < deg b`.
    pub(crate) fn pseudo_rem(&self, b: &Self) -> (Self, u32) {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.leading_coefficient().unwrap().clone();
        let mut rem = self.clone();
        let mut steps = 0;
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let lr = rem.leading_coefficient().unwrap().clone();
            rem = &rem.scalar_multiply(&lb) - &b.multiply_by_power(dr - db).scalar_multiply(&lr);
            steps += 1;
        }
        (rem, steps)
    }

    /// Primitive gcd with positive leading coefficient (`1` when coprime).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_constant() {
            Self::one()
        } else {
            a
        }
    }

    /// Yun's square-free decomposition: returns `(f_i, i)` with
    /// `self = c · Π f_i^i`, each `f_i` primitive, square-free and nonconstant,
    /// and the `f_i` pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(SparsePolynomial, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.primitive_part();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let next_b = b.div_exact(&a).expect("gcd divides b");
            let next_c = d.div_exact(&a).expect("gcd divides d");
            if !a.is_constant() {
                out.push((a, i));
            }
            d = &next_c - &next_b.derivative();
            b = next_b;
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (primitive).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.primitive_part();
        }
        let p = self.primitive_part();
        p.div_exact(&p.gcd(&p.derivative()))
            .expect("gcd divides polynomial")
            .primitive_part()
    }

    /// Exact sign of the value at `mantissa · 2^exp2`.
    pub fn sign_at_dyadic(&self, mantissa: &BigInt, exp2: i64) -> i32 {
        let Some(d) = self.degree() else { return 0 };
        let mut total = BigInt::zero();
        for (&e, c) in &self.terms {
            let mut t = c * mantissa.pow(e as u32);
            let shift = if exp2 >= 0 {
                exp2 * e as i64
            } else {
                -exp2 * (d - e) as i64
            };
            t <<= shift as usize;
            total += t;
        }
        sign_of(&total)
    }

    /// Exact sign of the value at a finite `f64` (every finite double is a
    /// dyadic rational).
    pub fn sign_at(&self, x: f64) -> i32 {
        let (m, e) = f64_to_dyadic(x);
        self.sign_at_dyadic(&m, e)
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        let dense = self.to_f64_dense();
        dense.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn evaluate_complex(&self, z: Complex64) -> Complex64 {
        let dense = self.to_f64_dense();
        dense
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value at `z`, computed exactly in dyadic Gaussian integers and rounded
    /// once at the end.
    pub fn evaluate_complex_exact(&self, z: Complex64) -> Complex64 {
        let Some(d) = self.degree() else {
            return Complex64::zero();
        };
        let (mut a, ea) = f64_to_dyadic(z.re);
        let (mut b, eb) = f64_to_dyadic(z.im);
        let e = match (a.is_zero(), b.is_zero()) {
            (true, true) => 0,
            (true, false) => eb,
            (false, true) => ea,
            (false, false) => ea.min(eb),
        };
        if !a.is_zero() {
            a <<= (ea - e) as usize;
        }
        if !b.is_zero() {
            b <<= (eb - e) as usize;
        }
        // homogeneous Horner: Σ c_k w^k s^{d-k} with w = a + bi, z = w·2^e
        // and s = 2^{-e} when e < 0 (otherwise w absorbs the scale).
        let (w_re, w_im, s_shift, out_exp) = if e >= 0 {
            (a << e as usize, b << e as usize, 0usize, 0i64)
        } else {
            (a, b, (-e) as usize, e * d as i64)
        };
        let mut re = self.coefficient(d);
        let mut im = BigInt::zero();
        for k in (0..d).rev() {
            let next_re = &re * &w_re - &im * &w_im;
            let next_im = &re * &w_im + &im * &w_re;
            re = next_re;
            im = next_im;
            let c = self.coefficient(k);
            if !c.is_zero() {
                re += c << (s_shift * (d - k));
            }
        }
        Complex64::new(dyadic_to_f64(&re, out_exp), dyadic_to_f64(&im, out_exp))
    }

    /// Dense ascending `f64` coefficients.
    pub fn to_f64_dense(&self) -> Vec<f64> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![0.0; d + 1];
        for (&e, c) in &self.terms {
            out[e] = c.to_f64().unwrap_or(if c.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            });
        }
        out
    }

    /// JSON form with the given variable name.
    pub fn to_json(&self, var: &str) -> PolynomialJson {
        PolynomialJson {
            var: var.to_string(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(&exp, c)| TermJson {
                    exp,
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match e {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&mag.to_string());
                    }
                    s.push_str(var);
                    if e > 1 {
                        s.push('^');
                        s.push_str(&e.to_string());
                    }
                }
            }
        }
        s
    }
}

fn sign_of(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Exact `(mantissa, exponent)` with `x = mantissa · 2^exponent`.
pub fn f64_to_dyadic(x: f64) -> (BigInt, i64) {
    assert!(x.is_finite(), "non-finite evaluation point");
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    (BigInt::from(mantissa) * sign, exponent - 1075)
}

/// `m · 2^exp` rounded to `f64`.
pub fn dyadic_to_f64(m: &BigInt, exp: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let shift = (m.bits() as i64 - 64).max(0);
    let top = (m >> shift as usize).to_f64().unwrap_or(0.0);
    ldexp(top, exp + shift)
}

fn ldexp(mut x: f64, mut k: i64) -> f64 {
    let big = 2f64.powi(1000);
    let small = 2f64.powi(-1000);
    while k > 1000 {
        x *= big;
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= small;
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(k as i32)
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Add<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $m(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $m(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Product for SparsePolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(SparsePolynomial::one(), |acc, p| &acc * &p)
    }
}

/// `{"var":"x","terms":[{"exp":13,"coef":"-7"},...]}`, descending exponents,
/// coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub var: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: usize,
    pub coef: String,
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<SparsePolynomial> {
        let mut p = SparsePolynomial::zero();
        for t in &self.terms {
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad coefficient {:?}", t.coef)))?;
            if p.terms.contains_key(&t.exp) {
                return Err(Error::InvalidParameter(format!(
                    "exponent {} listed twice",
                    t.exp
                )));
            }
            p.add_term(t.exp, c);
        }
        Ok(p)
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json("x").serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolynomialJson::deserialize(d)?
            .to_polynomial()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(usize, i64)]) -> SparsePolynomial {
        SparsePolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn shift_and_equality() {
        let r = 3;
        let a = p(&[(r, 1), (0, -1)]);
        assert_eq!(a.multiply_by_power(4), p(&[(r + 4, 1), (4, -1)]));
        assert_eq!(a, a.clone());
        assert_ne!(a, p(&[(r, 1)]));
    }

    #[test]
    fn ring_ops() {
        let a = p(&[(2, 1), (0, -1)]);
        let b = p(&[(1, 1), (0, 1)]);
        assert_eq!(&a * &b, p(&[(3, 1), (2, 1), (1, -1), (0, -1)]));
        assert_eq!(&a - &a, SparsePolynomial::zero());
        assert_eq!(&a + &(-&a), SparsePolynomial::zero());
        assert_eq!(a.scalar_multiply(&BigInt::from(-3)), p(&[(2, -3), (0, 3)]));
        assert_eq!(a.pow(2), p(&[(4, 1), (2, -2), (0, 1)]));
        assert_eq!(a.degree(), Some(2));
        assert_eq!(SparsePolynomial::zero().degree(), None);
    }

    #[test]
    fn exact_division() {
        let a = p(&[(2, 1), (0, -1)]);
        let b = p(&[(1, 1), (0, -1)]);
        assert_eq!(a.div_exact(&b), Some(p(&[(1, 1), (0, 1)])));
        assert_eq!(a.div_exact(&p(&[(1, 1), (0, 2)])), None);
        assert_eq!(p(&[(1, 1)]).div_exact(&p(&[(1, 2)])), None);
    }

    #[test]
    fn gcd_and_squarefree() {
        // (y-1)^2 (y-4)
        let f = &p(&[(1, 1), (0, -1)]).pow(2) * &p(&[(1, 1), (0, -4)]);
        let g = f.gcd(&f.derivative());
        assert_eq!(g, p(&[(1, 1), (0, -1)]));
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[(1, 1), (0, -4)]), 1), (p(&[(1, 1), (0, -1)]), 2)]
        );
        assert_eq!(f.squarefree_part(), p(&[(2, 1), (1, -5), (0, 4)]));
        // coprime
        assert_eq!(
            p(&[(1, 2), (0, 1)]).gcd(&p(&[(1, 1)])),
            SparsePolynomial::one()
        );
    }

    #[test]
    fn squarefree_cubes() {
        let a = p(&[(1, 1), (0, 2)]);
        let b = p(&[(2, 1), (0, 1)]);
        let f = (&a.pow(3) * &b).scalar_multiply(&BigInt::from(6));
        assert_eq!(f.squarefree_decomposition(), vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn dyadic_signs() {
        let f = p(&[(2, 1), (0, -2)]); // y^2 - 2
        assert_eq!(f.sign_at(1.5), 1);
        assert_eq!(f.sign_at(1.25), -1);
        assert_eq!(f.sign_at(-1.5), 1);
        let g = p(&[(1, 1), (0, -2)]);
        assert_eq!(g.sign_at(2.0), 0);
        assert_eq!(g.sign_at(2.0 + f64::EPSILON * 2.0), 1);
        assert_eq!(f64_to_dyadic(0.75), (BigInt::from(3u64 << 51), -53));
    }

    #[test]
    fn exact_complex_evaluation() {
        let f = p(&[(2, 1), (0, 1)]); // z^2 + 1
        assert_eq!(
            f.evaluate_complex_exact(Complex64::new(0.0, 1.0)),
            Complex64::zero()
        );
        assert_eq!(
            f.evaluate_complex_exact(Complex64::new(0.5, 0.0)),
            Complex64::new(1.25, 0.0)
        );
        let g = p(&[(3, 2), (1, -3), (0, 7)]);
        let z = Complex64::new(-1.75, 0.3125);
        let exact = g.evaluate_complex_exact(z);
        let approx = g.evaluate_complex(z);
        assert!((exact - approx).norm() < 1e-12);
        // cancellation that plain Horner gets wrong: (x - 1)^20 near 1
        let h = p(&[(1, 1), (0, -1)]).pow(20);
        let v = h.evaluate_complex_exact(Complex64::new(1.0 + 2f64.powi(-10), 0.0));
        assert_eq!(v.re, 2f64.powi(-200));
        assert_eq!(dyadic_to_f64(&BigInt::from(3), -1), 1.5);
        assert_eq!(dyadic_to_f64(&(BigInt::one() << 2000usize), -1990), 1024.0);
    }

    #[test]
    fn display_and_json() {
        let f = p(&[(13, 1), (10, -6), (7, 8)]);
        assert_eq!(f.to_string(), "x^13 - 6x^10 + 8x^7");
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"var":"x","terms":[{"exp":13,"coef":"1"},{"exp":10,"coef":"-6"},{"exp":7,"coef":"8"}]}"#
        );
        let back: SparsePolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(SparsePolynomial::zero().to_string(), "0");
        assert_eq!(p(&[(1, -1), (0, 3)]).to_string(), "-x + 3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = SparsePolynomial> {
            proptest::collection::vec((0usize..8, -20i64..20), 0..6)
                .prop_map(SparsePolynomial::from_terms)
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
            }

            #[test]
            fn product_divides_back(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!b.is_zero());
                let prod = &a * &b;
                prop_assert_eq!(prod.div_exact(&b), Some(a));
            }

            #[test]
            fn json_round_trip(a in arb_poly()) {
                let text = serde_json::to_string(&a).unwrap();
                let back: SparsePolynomial = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
