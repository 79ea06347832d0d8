//! Classes in A_*(P^n) = Z[H]/(H^{n+1}) with rational coefficients.
//!
//! A class is stored by codimension: `coeffs[j]` multiplies `H^j`. Operations
//! that depend on a grading (dual, Adams, tensor) take an explicit `offset`;
//! the index used is `j - offset`, so offset 0 grades by codimension in P^n
//! and offset `m - 1` grades by codimension in a complete intersection of
//! `m - 1` hypersurfaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::fmt_rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    n: usize,
    coeffs: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl GradedClass {
    pub fn zero(n: usize) -> Self {
        GradedClass {
            n,
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = BigRational::one();
        c
    }

    /// `H^j`, zero when `j > n`.
    pub fn hyperplane_power(n: usize, j: usize) -> Self {
        let mut c = Self::zero(n);
        if j <= n {
            c.coeffs[j] = BigRational::one();
        }
        c
    }

    /// Coefficients beyond `H^n` are dropped; missing ones are zero.
    pub fn from_coeffs(n: usize, coeffs: Vec<BigRational>) -> Self {
        let mut c = Self::zero(n);
        for (j, a) in coeffs.into_iter().enumerate().take(n + 1) {
            c.coeffs[j] = a;
        }
        c
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(n, coeffs.iter().map(|&a| q(a)).collect())
    }

    /// `(1 + lambda*H)^e`, for any integer `e`.
    pub fn line_power(n: usize, lambda: i64, e: i64) -> Self {
        let base = Self::from_ints(n, &[1, lambda]);
        let p = base.pow(e.unsigned_abs());
        if e < 0 {
            p.inverse().expect("unit constant term")
        } else {
            p
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    /// Smallest `j` with a nonzero coefficient.
    pub fn lowest_codim(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_integer())
    }

    /// Degree of the zero-dimensional component.
    pub fn integral(&self) -> BigRational {
        self.coeffs[self.n].clone()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        GradedClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GradedClass {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GradedClass {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Truncated product of the two H-polynomials.
    pub fn cap(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Formal reciprocal; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return None;
        }
        let inv0 = a0.recip();
        let mut out = Self::zero(self.n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=self.n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -s * &inv0;
        }
        Some(out)
    }

    fn check_offset(&self, offset: usize) -> Result<()> {
        if self.coeffs.iter().take(offset.min(self.n + 1)).any(|a| !a.is_zero()) {
            return Err(Error::BelowOffset { offset });
        }
        Ok(())
    }

    /// Multiply the `H^j` coefficient by `(-1)^(j - offset)`.
    pub fn dual(&self, offset: usize) -> Self {
        let mut out = self.clone();
        for (j, a) in out.coeffs.iter_mut().enumerate() {
            if j.abs_diff(offset) % 2 == 1 {
                *a = -a.clone();
            }
        }
        out
    }

    /// Multiply the `H^j` coefficient by `k^(j - offset)`.
    pub fn adams(&self, k: i64, offset: usize) -> Result<Self> {
        self.check_offset(offset)?;
        let kq = q(k);
        let mut out = self.clone();
        for (j, a) in out.coeffs.iter_mut().enumerate().skip(offset) {
            let e = (j - offset) as i32;
            *a = a.clone() * num_traits::pow(kq.clone(), e as usize);
        }
        Ok(out)
    }

    /// Replace `a_j H^j` by `a_j H^j / (1 + lambda*H)^(j - offset)`.
    pub fn tensor_line(&self, lambda: i64, offset: usize) -> Result<Self> {
        self.check_offset(offset)?;
        let mut out = Self::zero(self.n);
        for j in offset..=self.n {
            if self.coeffs[j].is_zero() {
                continue;
            }
            let series = Self::line_power(self.n, lambda, -((j - offset) as i64));
            for (i, c) in series.coeffs.iter().enumerate().take(self.n + 1 - j) {
                out.coeffs[i + j] += &self.coeffs[j] * c;
            }
        }
        Ok(out)
    }

    /// Exact `[numerator, denominator]` pairs.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|a| Value::Array(vec![int_json(a.numer()), int_json(a.denom())]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Io(format!("malformed class JSON: {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        if arr.is_empty() {
            return Err(bad());
        }
        let mut coeffs = Vec::with_capacity(arr.len());
        for pair in arr {
            let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let num = json_int(&p[0]).ok_or_else(bad)?;
            let den = json_int(&p[1]).ok_or_else(bad)?;
            if den.is_zero() {
                return Err(bad());
            }
            coeffs.push(BigRational::new(num, den));
        }
        Ok(Self::from_coeffs(arr.len() - 1, coeffs))
    }
}

fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

fn json_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = fmt_rational(&a.abs());
            let body = match j {
                0 => mag,
                1 => format!("{mag}*H"),
                _ => format!("{mag}*H^{j}"),
            };
            match (first, a.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[P^{}] {}", self.n, self)
    }
}

impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.try_add(rhs).expect("ambient dimension mismatch")
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self.try_sub(rhs).expect("ambient dimension mismatch")
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.cap(rhs).expect("ambient dimension mismatch")
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.scale(&q(-1))
    }
}

/// `O(d_1 H) + ... + O(d_r H)` plus `formal_rank - r` trivial summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    pub twists: Vec<i64>,
    pub formal_rank: i64,
}

impl SplitBundle {
    pub fn new(twists: Vec<i64>) -> Self {
        let formal_rank = twists.len() as i64;
        SplitBundle { twists, formal_rank }
    }

    pub fn with_formal_rank(twists: Vec<i64>, formal_rank: i64) -> Self {
        SplitBundle { twists, formal_rank }
    }

    pub fn line(d: i64) -> Self {
        Self::new(vec![d])
    }

    pub fn chern(&self, n: usize) -> GradedClass {
        self.chern_with(n, false, 0)
    }

    /// Chern class of `b^dual (x) O(twist H)` when `dualize`, else of
    /// `b (x) O(twist H)`. Trivial summands contribute `(1 + twist*H)` each.
    pub fn chern_with(&self, n: usize, dualize: bool, twist: i64) -> GradedClass {
        let mut c = GradedClass::one(n);
        for &d in &self.twists {
            let d = if dualize { -d } else { d };
            c = &c * &GradedClass::from_ints(n, &[1, d + twist]);
        }
        let trivial = self.formal_rank - self.twists.len() as i64;
        if twist != 0 && trivial != 0 {
            c = &c * &GradedClass::line_power(n, twist, trivial);
        }
        c
    }

    /// Reciprocal of the Chern class.
    pub fn inverse_chern(&self, n: usize) -> GradedClass {
        self.chern(n).inverse().expect("Chern class has constant term 1")
    }
}

/// `c(T P^n) = (1 + H)^(n+1)`.
pub fn ambient_tangent_chern(n: usize) -> GradedClass {
    GradedClass::line_power(n, 1, n as i64 + 1)
}
