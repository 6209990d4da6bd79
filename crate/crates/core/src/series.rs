//! The truncated ring `Z_p[x]/(x^M)` with per-coefficient precision.
//!
//! `x` plays the role of `1 - L` for the tautological line bundle `L` on
//! CP^{M-1}, so `(1 - x)^a` is the `a`-th tensor power of `L`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::{self, ilog, shift_down, PadicInt};

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    prime: u64,
    coeffs: Vec<PadicInt>,
    /// The coefficient of `x^(M-1)` is not determined by the inputs.
    top_unknown: bool,
}

impl TruncatedSeries {
    pub fn from_coefficients(coeffs: Vec<PadicInt>) -> Result<Self> {
        let prime =
            coeffs.first().ok_or_else(|| Error::Parse("a series needs at least one coefficient".into()))?.prime();
        if let Some(c) = coeffs.iter().find(|c| c.prime() != prime) {
            return Err(Error::PrimeMismatch(prime, c.prime()));
        }
        Ok(TruncatedSeries { prime, coeffs, top_unknown: false })
    }

    /// Integer coefficients, padded with exact zeros up to `truncation`.
    pub fn from_ints(prime: u64, precision: u32, truncation: usize, values: &[i128]) -> Result<Self> {
        check_truncation(truncation)?;
        let mut coeffs = Vec::with_capacity(truncation);
        for i in 0..truncation {
            coeffs.push(match values.get(i) {
                Some(&v) => PadicInt::new(prime, precision, v)?,
                None => PadicInt::zero(prime, precision)?,
            });
        }
        Ok(TruncatedSeries { prime, coeffs, top_unknown: false })
    }

    pub fn zero(prime: u64, precision: u32, truncation: usize) -> Result<Self> {
        Self::from_ints(prime, precision, truncation, &[])
    }

    pub fn one(prime: u64, precision: u32, truncation: usize) -> Result<Self> {
        Self::from_ints(prime, precision, truncation, &[1])
    }

    /// The generator `x`.
    pub fn x(prime: u64, precision: u32, truncation: usize) -> Result<Self> {
        Self::from_ints(prime, precision, truncation, &[0, 1])
    }

    pub fn constant(c: PadicInt, truncation: usize) -> Result<Self> {
        check_truncation(truncation)?;
        let zero = PadicInt::zero(c.prime(), c.precision())?;
        let mut coeffs = vec![zero; truncation];
        coeffs[0] = c;
        Ok(TruncatedSeries { prime: c.prime(), coeffs, top_unknown: false })
    }

    pub fn monomial(c: PadicInt, degree: usize, truncation: usize) -> Result<Self> {
        let mut s = Self::constant(PadicInt::zero(c.prime(), c.precision())?, truncation)?;
        if degree < truncation {
            s.coeffs[degree] = c;
        }
        Ok(s)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &PadicInt {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// Smallest coefficient precision.
    pub fn precision(&self) -> u32 {
        self.coeffs.iter().map(PadicInt::precision).min().unwrap_or(0)
    }

    pub fn top_unknown(&self) -> bool {
        self.top_unknown
    }

    pub(crate) fn with_top_unknown(mut self, flag: bool) -> Self {
        self.top_unknown = flag;
        self
    }

    /// Drop the undetermined top coefficient, if any.
    pub fn known_part(&self) -> Result<Self> {
        if self.top_unknown {
            if self.truncation() == 1 {
                return Err(Error::PrecisionExhausted("no known coefficients".into()));
            }
            return self.truncate(self.truncation() - 1);
        }
        Ok(self.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PadicInt::is_zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: PadicInt) -> Result<()> {
        if c.prime() != self.prime {
            return Err(Error::PrimeMismatch(self.prime, c.prime()));
        }
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn truncate(&self, truncation: usize) -> Result<Self> {
        check_truncation(truncation)?;
        if truncation > self.truncation() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot extend a series known mod x^{} to x^{truncation}",
                self.truncation()
            )));
        }
        let top_unknown = self.top_unknown && truncation == self.truncation();
        Ok(TruncatedSeries { prime: self.prime, coeffs: self.coeffs[..truncation].to_vec(), top_unknown })
    }

    /// Every coefficient reduced to at most `precision` digits.
    pub fn reduce_precision(&self, precision: u32) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.reduce(precision.min(c.precision()))).collect::<Result<_>>()?;
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.top_unknown })
    }

    pub(crate) fn lift(&self, precision: u32) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.lift(precision)).collect::<Result<_>>()?;
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.top_unknown })
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        Ok(())
    }

    fn merged_top(&self, other: &Self, truncation: usize) -> bool {
        (self.top_unknown && self.truncation() == truncation) || (other.top_unknown && other.truncation() == truncation)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let m = self.truncation().min(other.truncation());
        let coeffs = (0..m).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.merged_top(other, m) })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let m = self.truncation().min(other.truncation());
        let coeffs = (0..m).map(|i| self.coeffs[i] - other.coeffs[i]).collect();
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.merged_top(other, m) })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let m = self.truncation().min(other.truncation());
        let mut coeffs = Vec::with_capacity(m);
        let floor = self.precision().min(other.precision());
        for k in 0..m {
            let mut acc = PadicInt::zero(self.prime, floor)?;
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_exact_zero() && !b.is_exact_zero() {
                    acc = acc + a * b;
                }
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.merged_top(other, m) })
    }

    pub fn scale(&self, c: &PadicInt) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.checked_mul(c)).collect::<Result<_>>()?;
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.top_unknown })
    }

    pub fn scale_int(&self, k: i128) -> Self {
        TruncatedSeries {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|a| a.scale(k)).collect(),
            top_unknown: self.top_unknown,
        }
    }

    pub fn add_constant(&self, c: &PadicInt) -> Result<Self> {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].checked_add(c)?;
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        let mut acc = Self::constant(self.coeffs[0].sibling(1), self.truncation())?;
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Coefficientwise exact division by `p`; precision drops by one.
    pub fn divide_by_p(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(PadicInt::divide_by_p).collect::<Result<_>>()?;
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.top_unknown })
    }

    /// `f(g(x))` for `g(0)` divisible by `p`.
    ///
    /// When `g(0)` is nonzero, the omitted tail of `f` contributes terms of
    /// valuation at least `M_f * v_p(g(0))`, so the result is capped there.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_prime(inner)?;
        let g0 = inner.coeffs[0];
        if g0.is_unit() {
            return Err(Error::Convergence(format!(
                "substituting a series with unit constant term {g0} needs a polynomial outer function"
            )));
        }
        let out = self.compose_polynomial(inner)?;
        if g0.is_zero() {
            return Ok(out);
        }
        let cap = (self.truncation() as u64 * g0.valuation() as u64).min(u32::MAX as u64) as u32;
        if cap < out.precision() {
            return out.reduce_precision(cap);
        }
        Ok(out)
    }

    /// `f(g(x))` treating `f` as an exact polynomial of degree below `M_f`,
    /// so no condition on `g(0)` is needed.
    pub fn compose_polynomial(&self, inner: &Self) -> Result<Self> {
        self.check_prime(inner)?;
        let m = self.truncation().min(inner.truncation());
        let inner_t = inner.truncate(m)?;
        let mut acc = Self::constant(self.coeffs[self.truncation() - 1], m)?;
        for i in (0..self.truncation() - 1).rev() {
            acc = acc.checked_mul(&inner_t)?.add_constant(&self.coeffs[i])?;
        }
        let top = (self.top_unknown && self.truncation() == m) || (inner.top_unknown && inner.truncation() == m);
        Ok(acc.with_top_unknown(top))
    }

    /// `(1 - x)^a = sum_n C(a, n) (-x)^n` for a p-adic exponent.
    ///
    /// `C(a, n)` is only determined modulo `p^(N - v_p(n!))` when `a` is
    /// known modulo `p^N`, and each coefficient carries that precision.
    pub fn binomial_one_minus_pow(a: &PadicInt, truncation: usize) -> Result<Self> {
        check_truncation(truncation)?;
        let mut coeffs = Vec::with_capacity(truncation);
        for n in 0..truncation as u64 {
            let c = binomial(a, n)?;
            coeffs.push(if n % 2 == 1 { -c } else { c });
        }
        Ok(TruncatedSeries { prime: a.prime(), coeffs, top_unknown: false })
    }

    /// `(1 - x)^a` for an exact integer exponent; no precision is lost.
    pub fn one_minus_x_pow(prime: u64, precision: u32, truncation: usize, a: i128) -> Result<Self> {
        check_truncation(truncation)?;
        let mut coeffs = Vec::with_capacity(truncation);
        for n in 0..truncation as u64 {
            let v = arith::factorial_valuation(n, prime);
            let lifted = PadicInt::new(prime, precision + v, a)?;
            let c = binomial(&lifted, n)?;
            coeffs.push(if n % 2 == 1 { -c } else { c });
        }
        Ok(TruncatedSeries { prime, coeffs, top_unknown: false })
    }

    /// Formal derivative; the result is known modulo `x^(M-1)`.
    pub fn derivative(&self) -> Result<Self> {
        let m = self.truncation();
        if m == 1 {
            let zero = PadicInt::zero(self.prime, self.coeffs[0].precision())?;
            return Ok(TruncatedSeries { prime: self.prime, coeffs: vec![zero], top_unknown: true });
        }
        let coeffs = (1..m).map(|n| self.coeffs[n].scale(n as i128)).collect();
        Ok(TruncatedSeries { prime: self.prime, coeffs, top_unknown: self.top_unknown })
    }

    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        let b0 = c0.invert().map_err(|_| Error::NonUnit(format!("series with constant term {c0}")))?;
        let mut b: Vec<PadicInt> = vec![b0];
        for k in 1..self.truncation() {
            let mut acc = self.coeffs[1] * b[k - 1];
            for i in 2..=k {
                acc = acc + self.coeffs[i] * b[k - i];
            }
            b.push(-(acc * b0));
        }
        Ok(TruncatedSeries { prime: self.prime, coeffs: b, top_unknown: self.top_unknown })
    }

    /// `log(f)` for `f = 1 mod p` coefficientwise.
    ///
    /// Evaluated with guard digits; the result keeps the smallest coefficient
    /// precision of `f`.
    pub fn log(&self) -> Result<Self> {
        let n = self.precision();
        let one = self.coeffs[0].sibling(1);
        let w = self.add_constant(&-one)?;
        let v = min_valuation(&w);
        if v == 0 {
            return Err(Error::Convergence(format!("log needs a series = 1 mod p, got {self}")));
        }
        if v >= n {
            return Self::zero(self.prime, n, self.truncation()).map(|z| z.with_top_unknown(self.top_unknown));
        }
        let p = self.prime;
        let mut last = 1u64;
        loop {
            let next = last + 1;
            if next * v as u64 >= n as u64 + ilog(next, p) as u64 {
                break;
            }
            last = next;
        }
        let work = w.lift(n + ilog(last, p))?;
        let mut power = work.clone();
        let mut acc = Self::zero(p, n, self.truncation())?;
        for k in 1..=last {
            if k > 1 {
                power = power.checked_mul(&work)?;
            }
            let term = divide_series_by_int(&power, k, n)?;
            acc = if k % 2 == 1 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
        }
        Ok(acc.with_top_unknown(self.top_unknown))
    }

    /// `exp(f)` for `f` with every coefficient divisible by `p`.
    pub fn exp(&self) -> Result<Self> {
        let n = self.precision();
        let v = min_valuation(self);
        if v == 0 {
            return Err(Error::Convergence(format!("exp needs coefficients divisible by p, got {self}")));
        }
        if v >= n {
            return Self::one(self.prime, n, self.truncation()).map(|o| o.with_top_unknown(self.top_unknown));
        }
        let p = self.prime;
        let mut last = 0u64;
        loop {
            let next = last + 1;
            if next * v as u64 >= n as u64 + (next - 1) / (p - 1) {
                break;
            }
            last = next;
        }
        let guard = arith::factorial_valuation(last, p);
        let work = self.lift(n + guard)?;
        let mut power = Self::one(p, n + guard, self.truncation())?;
        let mut acc = Self::one(p, n, self.truncation())?;
        let mut fact_val = 0u32;
        let mut fact_unit = PadicInt::one(p, n)?;
        for k in 1..=last {
            power = power.checked_mul(&work)?;
            let vk = arith::int_valuation(k, p);
            fact_val += vk;
            fact_unit = fact_unit.scale((k / p.pow(vk)) as i128);
            let inv = fact_unit.invert()?;
            let coeffs = power
                .coeffs
                .iter()
                .map(|c| Ok(shift_down(c, fact_val)?.reduce(n)? * inv))
                .collect::<Result<Vec<_>>>()?;
            acc = acc.checked_add(&TruncatedSeries { prime: p, coeffs, top_unknown: false })?;
        }
        Ok(acc.with_top_unknown(self.top_unknown))
    }

    /// Coefficientwise equality at the smallest common precision and
    /// truncation.
    pub fn eq_at_common_precision(&self, other: &Self) -> bool {
        self.prime == other.prime && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.eq_at_common_precision(b))
    }

    /// The polynomial part of the text form, e.g. `1 - x + 3*x^2`.
    pub fn polynomial_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.balanced();
            if v == 0 {
                continue;
            }
            let mag = v.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => monomial_text(i),
                _ => format!("{mag}*{}", monomial_text(i)),
            };
            if out.is_empty() {
                if v < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if v < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn monomial_text(i: usize) -> String {
    if i == 1 {
        "x".to_string()
    } else {
        format!("x^{i}")
    }
}

fn check_truncation(truncation: usize) -> Result<()> {
    if truncation == 0 {
        return Err(Error::Parse("truncation must be at least 1".into()));
    }
    Ok(())
}

fn min_valuation(s: &TruncatedSeries) -> u32 {
    s.coeffs.iter().map(|c| c.valuation()).min().unwrap_or(0)
}

/// `C(a, n)` at precision `N_a - v_p(n!)`.
fn binomial(a: &PadicInt, n: u64) -> Result<PadicInt> {
    let p = a.prime();
    let v = arith::factorial_valuation(n, p);
    if v >= a.precision() {
        return Err(Error::PrecisionExhausted(format!("C(a, {n}) needs more than {} digits of a", a.precision())));
    }
    let mut falling = a.sibling(1);
    let mut unit = a.sibling(1);
    for j in 0..n {
        falling = falling * (*a - a.sibling(j as i128));
        let k = j + 1;
        unit = unit.scale((k / p.pow(arith::int_valuation(k, p))) as i128);
    }
    let shifted = shift_down(&falling, v)?;
    Ok(shifted * unit.reduce(shifted.precision())?.invert()?)
}

fn divide_series_by_int(s: &TruncatedSeries, k: u64, target: u32) -> Result<TruncatedSeries> {
    let p = s.prime;
    let v = arith::int_valuation(k, p);
    let unit = PadicInt::new(p, target, (k / p.pow(v)) as i128)?.invert()?;
    let coeffs = s.coeffs.iter().map(|c| Ok(shift_down(c, v)?.reduce(target)? * unit)).collect::<Result<_>>()?;
    Ok(TruncatedSeries { prime: p, coeffs, top_unknown: s.top_unknown })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on prime mismatch; use the `checked_*` form to get an error.
        impl $trait for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).expect("series with different primes")
            }
        }
        impl $trait for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                self.$checked(&rhs).expect("series with different primes")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -*c).collect(),
            top_unknown: self.top_unknown,
        }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.eq_at_common_precision(other)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{}, x^{})", self.polynomial_text(), self.prime, self.precision(), self.truncation())?;
        if self.top_unknown {
            write!(f, " [top coefficient unknown]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    prime: u64,
    precision: u32,
    truncation: usize,
    coefficients: Vec<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coefficient_precisions: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    top_unknown: bool,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let precision = self.precision();
        let uniform = self.coeffs.iter().all(|c| c.precision() == precision);
        SeriesJson {
            prime: self.prime,
            precision,
            truncation: self.truncation(),
            coefficients: self.coeffs.iter().map(|c| c.residue() as i128).collect(),
            coefficient_precisions: (!uniform).then(|| self.coeffs.iter().map(PadicInt::precision).collect()),
            top_unknown: self.top_unknown,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(d)?;
        if raw.coefficients.len() > raw.truncation {
            return Err(D::Error::custom("more coefficients than the truncation allows"));
        }
        let build = || -> Result<TruncatedSeries> {
            padic::check_prime(raw.prime)?;
            let mut s = TruncatedSeries::from_ints(raw.prime, raw.precision, raw.truncation, &raw.coefficients)?;
            if let Some(precs) = &raw.coefficient_precisions {
                if precs.len() != raw.truncation {
                    return Err(Error::Parse("coefficient_precisions length must equal truncation".into()));
                }
                for (i, &n) in precs.iter().enumerate() {
                    let c = raw.coefficients.get(i).copied().unwrap_or(0);
                    s.coeffs[i] = PadicInt::new(raw.prime, n, c)?;
                }
            }
            Ok(s.with_top_unknown(raw.top_unknown))
        };
        build().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u64, n: u32, m: usize, v: &[i128]) -> TruncatedSeries {
        TruncatedSeries::from_ints(p, n, m, v).unwrap()
    }

    fn ints(f: &TruncatedSeries) -> Vec<i128> {
        f.coefficients().iter().map(|c| c.balanced()).collect()
    }

    #[test]
    fn geometric_series_inverts_one_minus_x() {
        let m = 6;
        let f = s(5, 4, m, &[1, -1]) * s(5, 4, m, &[1; 6]);
        assert_eq!(ints(&f), vec![1, 0, 0, 0, 0, 0]);
        let g = s(3, 3, 4, &[2, 1, 0, 5]);
        assert_eq!(&g * &s(3, 3, 4, &[1]), g);
        assert_eq!(ints(&(s(3, 3, 3, &[1, 1]) * s(3, 3, 3, &[1, 1]))), vec![1, 2, 1]);
    }

    #[test]
    fn truncation_is_minimum() {
        let f = s(3, 3, 5, &[1, 1]) * s(3, 3, 3, &[1, 1]);
        assert_eq!(f.truncation(), 3);
    }

    #[test]
    fn composition_examples() {
        let f = s(3, 4, 4, &[7, 1, 2, 3]);
        assert_eq!(f.compose(&s(3, 4, 4, &[0, 1])).unwrap(), f);
        let sq = s(3, 4, 3, &[0, 0, 1]);
        let inner = s(3, 4, 4, &[0, 3, -3, 1]);
        assert_eq!(ints(&sq.compose(&inner).unwrap()), vec![0, 0, 9]);
        let one_plus_x = s(3, 4, 3, &[1, 1]);
        assert_eq!(ints(&one_plus_x.compose(&s(3, 4, 3, &[0])).unwrap()), vec![1, 0, 0]);
    }

    #[test]
    fn composition_with_unit_constant_needs_polynomial() {
        let f = s(3, 4, 3, &[1, 1, 1]);
        let g = s(3, 4, 3, &[1, 1]);
        assert!(matches!(f.compose(&g), Err(Error::Convergence(_))));
        // (1 + y + y^2) at y = 1 + x is 3 + 3x + x^2.
        assert_eq!(ints(&f.compose_polynomial(&g).unwrap()), vec![3, 3, 1]);
    }

    #[test]
    fn composition_caps_precision_for_nonzero_small_constant() {
        let f = s(3, 6, 2, &[0, 1]);
        let g = s(3, 6, 2, &[3, 1]);
        let out = f.compose(&g).unwrap();
        assert_eq!(out.precision(), 2);
    }

    #[test]
    fn binomial_examples() {
        let one = PadicInt::new(5, 4, 1).unwrap();
        assert_eq!(ints(&TruncatedSeries::binomial_one_minus_pow(&one, 4).unwrap()), vec![1, -1, 0, 0]);
        let minus_one = PadicInt::new(5, 4, -1).unwrap();
        let geo = TruncatedSeries::binomial_one_minus_pow(&minus_one, 4).unwrap();
        let oracle = s(5, 4, 4, &[1, -1]).invert_unit().unwrap();
        assert_eq!(geo, oracle);
        assert_eq!(ints(&geo), vec![1, 1, 1, 1]);
        // Frobenius: (1 - x)^p = 1 - x^p mod p.
        for p in [3u64, 5, 7] {
            let a = PadicInt::new(p, 1, p as i128).unwrap();
            let f = TruncatedSeries::binomial_one_minus_pow(&a, p as usize).unwrap();
            let exact = TruncatedSeries::one_minus_x_pow(p, 1, p as usize + 1, p as i128).unwrap();
            let mut expect = vec![0i128; p as usize + 1];
            expect[0] = 1;
            expect[p as usize] = -1;
            assert_eq!(exact, s(p, 1, p as usize + 1, &expect));
            assert_eq!(f, s(p, 1, p as usize, &expect[..p as usize]));
        }
    }

    #[test]
    fn binomial_tracks_factorial_loss() {
        let a = PadicInt::new(3, 4, 5).unwrap();
        let f = TruncatedSeries::binomial_one_minus_pow(&a, 7).unwrap();
        let precs: Vec<u32> = f.coefficients().iter().map(PadicInt::precision).collect();
        assert_eq!(precs, vec![4, 4, 4, 3, 3, 3, 2]);
        let short = PadicInt::new(3, 2, 5).unwrap();
        assert!(matches!(TruncatedSeries::binomial_one_minus_pow(&short, 7), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn derivative_examples() {
        assert!(s(5, 3, 4, &[7]).derivative().unwrap().is_zero());
        let d = s(5, 3, 5, &[0, 0, 0, 1]).derivative().unwrap();
        assert_eq!(ints(&d), vec![0, 0, 3, 0]);
        assert_eq!(ints(&s(5, 3, 3, &[1, 1, 1]).derivative().unwrap()), vec![1, 2]);
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(ints(&s(3, 2, 3, &[1]).invert_unit().unwrap()), vec![1, 0, 0]);
        assert_eq!(ints(&s(3, 2, 4, &[1, -1]).invert_unit().unwrap()), vec![1, 1, 1, 1]);
        let inv = s(3, 2, 3, &[1, 3]).invert_unit().unwrap();
        assert_eq!(inv.coefficients().iter().map(|c| c.residue()).collect::<Vec<_>>(), vec![1, 6, 0]);
        assert_eq!(ints(&(inv * s(3, 2, 3, &[1, 3]))), vec![1, 0, 0]);
        assert!(matches!(s(3, 2, 3, &[3, 1]).invert_unit(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn exp_of_the_b_summand_right_side() {
        // exp(-3(b + b x^2)) = 1 - 3b + 3b x^2 ... mod (9, x^3) up to the sign
        // of the x^2 term carried by the argument.
        for b in 1..9 {
            let arg = s(3, 2, 3, &[-3 * b, 0, 3 * b]);
            let e = arg.exp().unwrap();
            assert_eq!(e, s(3, 2, 3, &[1 - 3 * b, 0, 3 * b]));
        }
        assert!(s(3, 2, 3, &[0]).exp().unwrap() == s(3, 2, 3, &[1]));
        assert!(s(3, 2, 3, &[1]).log().unwrap().is_zero());
    }

    #[test]
    fn log_exp_round_trip_on_px() {
        for p in [3u64, 5, 7] {
            let px = s(p, 6, 5, &[0, p as i128]);
            assert_eq!(px.exp().unwrap().log().unwrap(), px);
        }
    }

    #[test]
    fn log_exp_preconditions() {
        assert!(matches!(s(3, 3, 3, &[1, 1]).log(), Err(Error::Convergence(_))));
        assert!(matches!(s(3, 3, 3, &[0, 1]).exp(), Err(Error::Convergence(_))));
    }

    #[test]
    fn text_form() {
        assert_eq!(s(3, 4, 3, &[1, -1]).to_string(), "1 - x (mod 3^4, x^3)");
        assert_eq!(s(5, 2, 4, &[0, 0, 3, -2]).polynomial_text(), "3*x^2 - 2*x^3");
        assert_eq!(s(5, 2, 4, &[]).polynomial_text(), "0");
        assert_eq!(s(5, 2, 4, &[-1, 0, 1]).polynomial_text(), "-1 + x^2");
    }

    #[test]
    fn json_form() {
        let f = s(3, 2, 3, &[1, -1]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"prime":3,"precision":2,"truncation":3,"coefficients":[1,8,0]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let short: TruncatedSeries =
            serde_json::from_str(r#"{"prime":5,"precision":3,"truncation":4,"coefficients":[1,-1]}"#).unwrap();
        assert_eq!(short.truncation(), 4);
        assert!(serde_json::from_str::<TruncatedSeries>(
            r#"{"prime":4,"precision":3,"truncation":1,"coefficients":[1]}"#
        )
        .is_err());
    }
}
