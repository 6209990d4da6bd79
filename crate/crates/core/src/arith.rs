//! Residue arithmetic modulo odd moduli below 2^126.
//!
//! Moduli up to 2^64 use native 128-bit products; larger ones go through a
//! Montgomery multiplier whose constants are cached per thread for the most
//! recently used modulus.

use std::cell::Cell;

/// Exclusive upper bound on supported moduli. Sums of two residues stay
/// below 2^127, which the Montgomery reduction needs.
pub(crate) const MODULUS_LIMIT: u128 = 1 << 126;

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
        if acc >= MODULUS_LIMIT {
            return None;
        }
    }
    Some(acc)
}

#[inline]
pub(crate) fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub(crate) fn neg_mod(a: u128, m: u128) -> u128 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= 1 << 64 {
        return (a * b) % m;
    }
    mont_mul_mod(a, b, m)
}

pub(crate) fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u128)
}

/// Reduces a signed integer into `[0, m)`.
pub(crate) fn reduce_signed(v: i128, m: u128) -> u128 {
    if v >= 0 {
        (v as u128) % m
    } else {
        let r = v.unsigned_abs() % m;
        neg_mod(r, m)
    }
}

fn mul_mod_slow(mut a: u128, mut b: u128, m: u128) -> u128 {
    let mut r = 0;
    a %= m;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

#[derive(Clone, Copy)]
struct Montgomery {
    modulus: u128,
    neg_inv: u128,
    r2: u128,
}

impl Montgomery {
    fn new(m: u128) -> Self {
        debug_assert!(m & 1 == 1);
        // Newton iteration for m^{-1} mod 2^128; m*m = 1 mod 8 seeds 3 bits.
        let mut inv = m;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(m.wrapping_mul(inv)));
        }
        let r1 = (u128::MAX % m + 1) % m;
        Montgomery { modulus: m, neg_inv: inv.wrapping_neg(), r2: mul_mod_slow(r1, r1, m) }
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let q = lo.wrapping_mul(self.neg_inv);
        let (qm_hi, qm_lo) = mul_wide(q, self.modulus);
        let (_, carry) = lo.overflowing_add(qm_lo);
        let t = hi + qm_hi + carry as u128;
        if t >= self.modulus {
            t - self.modulus
        } else {
            t
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let t = self.redc(hi, lo);
        let (hi, lo) = mul_wide(t, self.r2);
        self.redc(hi, lo)
    }
}

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

thread_local! {
    static MONTGOMERY: Cell<Option<Montgomery>> = const { Cell::new(None) };
}

fn mont_mul_mod(a: u128, b: u128, m: u128) -> u128 {
    MONTGOMERY.with(|cell| {
        let ctx = match cell.get() {
            Some(ctx) if ctx.modulus == m => ctx,
            _ => {
                let ctx = Montgomery::new(m);
                cell.set(Some(ctx));
                ctx
            }
        };
        ctx.mul(a, b)
    })
}

/// Exponent of `p` in `n!` (Legendre).
pub(crate) fn factorial_valuation(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q as u32;
        q /= p;
    }
    v
}

/// Exponent of `p` in `n` (n > 0).
pub(crate) fn int_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primitive roots modulo `p`, in increasing order.
pub(crate) fn primitive_roots(p: u64) -> Vec<u64> {
    let order = p - 1;
    let mut factors = Vec::new();
    let mut n = order;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (1..p).filter(|&g| factors.iter().all(|&q| pow_mod(g as u128, (order / q) as u128, p as u128) != 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_matches_slow_path() {
        let m = 7u128.pow(40);
        let samples = [1u128, 2, 12345678901234567890123, m - 1, m / 3, 7u128.pow(20) + 5];
        for &a in &samples {
            for &b in &samples {
                assert_eq!(mont_mul_mod(a, b, m), mul_mod_slow(a, b, m), "{a} * {b}");
            }
        }
    }

    #[test]
    fn inverse_small() {
        assert_eq!(inv_mod(2, 27), Some(14));
        assert_eq!(inv_mod(3, 27), None);
    }

    #[test]
    fn primitive_roots_of_small_primes() {
        assert_eq!(primitive_roots(3), vec![2]);
        assert_eq!(primitive_roots(5), vec![2, 3]);
        assert_eq!(primitive_roots(7), vec![3, 5]);
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(27, 7), 3);
        assert_eq!(factorial_valuation(9, 3), 4);
        assert_eq!(factorial_valuation(2, 3), 0);
    }
}
