//! Fixed-precision p-adic integers.
//!
//! A [`PadicInt`] is a residue modulo `p^N` that remembers `N`. Binary
//! operations work at the smaller of the two precisions, and operations that
//! genuinely lose digits (division by `p`) lower the carried precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, add_mod, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct PadicInt {
    prime: u64,
    precision: u32,
    modulus: u128,
    residue: u128,
    exact_zero: bool,
}

pub(crate) fn check_prime(prime: u64) -> Result<()> {
    if prime < 3 || !arith::is_prime(prime) {
        return Err(Error::InvalidPrime(prime));
    }
    Ok(())
}

pub(crate) fn modulus_for(prime: u64, precision: u32) -> Result<u128> {
    if precision == 0 {
        return Err(Error::PrecisionOutOfRange { prime, precision });
    }
    arith::checked_pow(prime, precision).ok_or(Error::PrecisionOutOfRange { prime, precision })
}

impl PadicInt {
    /// The class of `value` modulo `p^precision`.
    pub fn new(prime: u64, precision: u32, value: i128) -> Result<Self> {
        check_prime(prime)?;
        let modulus = modulus_for(prime, precision)?;
        Ok(Self::raw(prime, precision, modulus, arith::reduce_signed(value, modulus)))
    }

    pub fn from_residue(prime: u64, precision: u32, residue: u128) -> Result<Self> {
        check_prime(prime)?;
        let modulus = modulus_for(prime, precision)?;
        if residue >= modulus {
            return Err(Error::Parse(format!("residue {residue} is not below {prime}^{precision}")));
        }
        Ok(Self::raw(prime, precision, modulus, residue))
    }

    /// Exact zero: known to vanish at every precision.
    pub fn zero(prime: u64, precision: u32) -> Result<Self> {
        let mut z = Self::new(prime, precision, 0)?;
        z.exact_zero = true;
        Ok(z)
    }

    pub fn one(prime: u64, precision: u32) -> Result<Self> {
        Self::new(prime, precision, 1)
    }

    pub(crate) fn raw(prime: u64, precision: u32, modulus: u128, residue: u128) -> Self {
        PadicInt { prime, precision, modulus, residue, exact_zero: false }
    }

    /// Same prime and precision as `self`, value `v`.
    pub fn sibling(&self, v: i128) -> Self {
        Self::raw(self.prime, self.precision, self.modulus, arith::reduce_signed(v, self.modulus))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> u128 {
        self.residue
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn balanced(&self) -> i128 {
        if self.residue > self.modulus / 2 {
            -((self.modulus - self.residue) as i128)
        } else {
            self.residue as i128
        }
    }

    /// Largest `v <= N` with `p^v` dividing the residue.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            return self.precision;
        }
        let p = self.prime as u128;
        let mut r = self.residue;
        let mut v = 0;
        while r.is_multiple_of(p) {
            r /= p;
            v += 1;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// True only for values constructed as exact zero (or products with one).
    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Zero modulo `p^N` but not known to be exactly zero.
    pub fn is_zero_at_precision(&self) -> bool {
        self.residue == 0 && !self.exact_zero
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.prime as u128)
    }

    /// Residue modulo `p`.
    pub fn residue_mod_p(&self) -> u64 {
        (self.residue % self.prime as u128) as u64
    }

    /// Forget digits above `p^precision`.
    pub fn reduce(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::PrecisionExhausted(format!("cannot raise precision of {self} to {precision}")));
        }
        let modulus = modulus_for(self.prime, precision)?;
        let mut out = Self::raw(self.prime, precision, modulus, self.residue % modulus);
        out.exact_zero = self.exact_zero;
        Ok(out)
    }

    /// Reinterpret the canonical residue at a higher precision. The new
    /// digits are zero by choice of representative, so callers must only use
    /// this where the result is later reduced back or the value is exact.
    pub(crate) fn lift(&self, precision: u32) -> Result<Self> {
        let modulus = modulus_for(self.prime, precision)?;
        let mut out = Self::raw(self.prime, precision, modulus, self.residue % modulus);
        out.exact_zero = self.exact_zero;
        Ok(out)
    }

    fn align(&self, other: &Self) -> Result<(u128, u128, u32, u128)> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.precision == other.precision {
            return Ok((self.residue, other.residue, self.precision, self.modulus));
        }
        let (precision, modulus) = if self.precision < other.precision {
            (self.precision, self.modulus)
        } else {
            (other.precision, other.modulus)
        };
        Ok((self.residue % modulus, other.residue % modulus, precision, modulus))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b, n, m) = self.align(other)?;
        let mut out = Self::raw(self.prime, n, m, add_mod(a, b, m));
        out.exact_zero = self.exact_zero && other.exact_zero;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b, n, m) = self.align(other)?;
        let mut out = Self::raw(self.prime, n, m, sub_mod(a, b, m));
        out.exact_zero = self.exact_zero && other.exact_zero;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b, n, m) = self.align(other)?;
        let mut out = Self::raw(self.prime, n, m, mul_mod(a, b, m));
        out.exact_zero = self.exact_zero || other.exact_zero;
        Ok(out)
    }

    pub fn scale(&self, k: i128) -> Self {
        let k = arith::reduce_signed(k, self.modulus);
        let mut out = Self::raw(self.prime, self.precision, self.modulus, mul_mod(self.residue, k, self.modulus));
        out.exact_zero = self.exact_zero;
        out
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self::raw(self.prime, self.precision, self.modulus, arith::pow_mod(self.residue, exp as u128, self.modulus))
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let inv = arith::inv_mod(self.residue, self.modulus)
            .ok_or_else(|| Error::Internal(format!("no inverse for unit {self}")))?;
        Ok(Self::raw(self.prime, self.precision, self.modulus, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.invert()?)
    }

    /// Exact division by `p`; the result is known modulo `p^(N-1)`.
    pub fn divide_by_p(&self) -> Result<Self> {
        if self.precision <= 1 {
            return Err(Error::PrecisionExhausted(format!("cannot divide {self} by p")));
        }
        if !self.residue.is_multiple_of(self.prime as u128) {
            return Err(Error::NotDivisibleByP(self.to_string()));
        }
        let modulus = self.modulus / self.prime as u128;
        let mut out = Self::raw(self.prime, self.precision - 1, modulus, self.residue / self.prime as u128);
        out.exact_zero = self.exact_zero;
        Ok(out)
    }

    /// Compare at the lower of the two precisions.
    pub fn eq_at_common_precision(&self, other: &Self) -> bool {
        match self.align(other) {
            Ok((a, b, _, _)) => a == b,
            Err(_) => false,
        }
    }

    /// Teichmüller representative of `a mod p`: the `(p-1)`st root of unity
    /// congruent to `a`, found by Newton iteration on `x^(p-1) - 1`.
    pub fn teichmuller(a: u64, prime: u64, precision: u32) -> Result<Self> {
        check_prime(prime)?;
        let a = a % prime;
        if a == 0 {
            return Err(Error::NonUnit(format!("0 mod {prime} has no Teichmüller lift")));
        }
        let m = modulus_for(prime, precision)?;
        let e = (prime - 1) as u128;
        let mut x = a as u128;
        for _ in 0..256 {
            let f = sub_mod(arith::pow_mod(x, e, m), 1, m);
            if f == 0 {
                return Ok(Self::raw(prime, precision, m, x));
            }
            let df = mul_mod(e % m, arith::pow_mod(x, e - 1, m), m);
            let step = mul_mod(f, arith::inv_mod(df, m).expect("derivative is a unit"), m);
            x = sub_mod(x, step, m);
        }
        Err(Error::Internal("Teichmüller iteration did not converge".into()))
    }

    /// The Teichmüller representative congruent to this unit.
    pub fn teichmuller_part(&self) -> Result<Self> {
        Self::teichmuller(self.residue_mod_p(), self.prime, self.precision)
    }

    /// `log(u) = sum (-1)^(n+1) (u-1)^n / n` for `u = 1 mod p`.
    ///
    /// The sum is evaluated with guard digits so the `1/n` divisions do not
    /// cost precision: the result is known to the precision of `u`.
    pub fn log_1unit(&self) -> Result<Self> {
        let z = self.checked_sub(&self.sibling(1))?;
        if z.is_zero() {
            return self.sibling_zero();
        }
        let v = z.valuation();
        if v == 0 {
            return Err(Error::Convergence(format!("log needs u = 1 mod p, got {self}")));
        }
        let n = self.precision;
        let p = self.prime;
        // n*v - floor(log_p n) is nondecreasing and bounds the valuation of
        // the n-th term from below.
        let mut last = 1u64;
        loop {
            let next = last + 1;
            if next * v as u64 >= n as u64 + ilog(next, p) as u64 {
                break;
            }
            last = next;
        }
        let guard = ilog(last, p);
        let work = z.lift(n + guard)?;
        let mut power = work;
        let mut acc = self.sibling(0);
        for k in 1..=last {
            if k > 1 {
                power = power * work;
            }
            let term = divide_by_int(&power, k, n)?;
            acc = if k % 2 == 1 { acc + term } else { acc - term };
        }
        Ok(acc)
    }

    /// `exp(z) = sum z^n / n!` for `v_p(z) >= 1`.
    pub fn exp_padic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.sibling(1));
        }
        let v = self.valuation();
        if v == 0 {
            return Err(Error::Convergence(format!("exp needs v_p(z) >= 1, got {self}")));
        }
        let n = self.precision;
        let p = self.prime;
        // v_p(k!) <= (k-1)/(p-1) gives a monotone lower bound on term valuations.
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
        let mut power = work.sibling(1);
        let mut acc = self.sibling(1);
        let mut fact_unit = work.sibling(1);
        let mut fact_val = 0u32;
        for k in 1..=last {
            power = power * work;
            let vk = arith::int_valuation(k, p);
            fact_val += vk;
            fact_unit = fact_unit.scale((k / p.pow(vk)) as i128);
            let shifted = shift_down(&power, fact_val)?;
            let term = shifted.reduce(n)? * fact_unit.reduce(n)?.invert()?;
            acc = acc + term;
        }
        Ok(acc)
    }

    fn sibling_zero(&self) -> Result<Self> {
        Ok(self.sibling(0))
    }
}

/// `floor(log_p(n))` for `n >= 1`.
pub(crate) fn ilog(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        k += 1;
    }
    k
}

/// Divide a residue by `p^v` exactly. The residue must be divisible; the
/// result has precision `N - v`.
pub(crate) fn shift_down(x: &PadicInt, v: u32) -> Result<PadicInt> {
    if v == 0 {
        return Ok(*x);
    }
    if v >= x.precision {
        return Err(Error::PrecisionExhausted(format!("dividing {x} by {}^{v}", x.prime)));
    }
    let pv = (x.prime as u128).pow(v);
    if !x.residue.is_multiple_of(pv) {
        return Err(Error::NotDivisibleByP(format!("{x} by {}^{v}", x.prime)));
    }
    let modulus = x.modulus / pv;
    Ok(PadicInt::raw(x.prime, x.precision - v, modulus, x.residue / pv))
}

/// `x / k` reduced to precision `target`, where `x` carries enough guard
/// digits to absorb `v_p(k)`.
fn divide_by_int(x: &PadicInt, k: u64, target: u32) -> Result<PadicInt> {
    let v = arith::int_valuation(k, x.prime);
    let shifted = shift_down(x, v)?.reduce(target)?;
    let unit = shifted.sibling((k / x.prime.pow(v)) as i128);
    Ok(shifted * unit.invert()?)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on prime mismatch; use the `checked_*` form to get an error.
        impl $trait for PadicInt {
            type Output = PadicInt;
            fn $method(self, rhs: PadicInt) -> PadicInt {
                self.$checked(&rhs).expect("p-adic operands with different primes")
            }
        }
        impl $trait<&PadicInt> for &PadicInt {
            type Output = PadicInt;
            fn $method(self, rhs: &PadicInt) -> PadicInt {
                self.$checked(rhs).expect("p-adic operands with different primes")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let mut out = PadicInt::raw(self.prime, self.precision, self.modulus, neg_mod(self.residue, self.modulus));
        out.exact_zero = self.exact_zero;
        out
    }
}

impl PartialEq for PadicInt {
    fn eq(&self, other: &Self) -> bool {
        self.eq_at_common_precision(other)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.prime, self.precision)
    }
}

#[derive(Serialize, Deserialize)]
struct PadicJson {
    prime: u64,
    precision: u32,
    residue: u128,
}

impl Serialize for PadicInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson { prime: self.prime, precision: self.precision, residue: self.residue }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PadicJson::deserialize(d)?;
        PadicInt::from_residue(raw.prime, raw.precision, raw.residue).map_err(serde::de::Error::custom)
    }
}
