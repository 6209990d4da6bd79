//! Reference arithmetic on plain big integers. Nothing here calls into the
//! crate, so agreement with it is an independent check.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Poly = Vec<BigInt>;

pub fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

pub fn pw(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

pub fn md(a: &BigInt, q: &BigInt) -> BigInt {
    a.mod_floor(q)
}

/// `v_p(a)`, or `cap` when `a` is zero or divisible by `p^cap`.
pub fn val(a: &BigInt, p: u64, cap: u32) -> u32 {
    let p = BigInt::from(p);
    let mut a = a.clone();
    let mut v = 0;
    while v < cap && !a.is_zero() && (&a % &p).is_zero() {
        a /= &p;
        v += 1;
    }
    if a.is_zero() {
        cap
    } else {
        v
    }
}

pub fn inv_mod(a: &BigInt, q: &BigInt) -> BigInt {
    let e = md(a, q).extended_gcd(q);
    assert!(e.gcd.is_one(), "{a} is not invertible mod {q}");
    md(&e.x, q)
}

pub fn reduce(f: &[BigInt], q: &BigInt) -> Poly {
    f.iter().map(|c| md(c, q)).collect()
}

pub fn mul(f: &[BigInt], g: &[BigInt], q: &BigInt) -> Poly {
    let m = f.len().min(g.len());
    let mut out = vec![BigInt::zero(); m];
    for i in 0..m {
        for j in 0..m - i {
            out[i + j] += &f[i] * &g[j];
        }
    }
    reduce(&out, q)
}

pub fn pow(f: &[BigInt], e: u64, q: &BigInt) -> Poly {
    let mut acc = one(f.len());
    for _ in 0..e {
        acc = mul(&acc, f, q);
    }
    acc
}

pub fn one(m: usize) -> Poly {
    let mut v = vec![BigInt::zero(); m];
    v[0] = BigInt::one();
    v
}

pub fn inverse(f: &[BigInt], q: &BigInt) -> Poly {
    let b0 = inv_mod(&f[0], q);
    let mut b = vec![b0.clone()];
    for k in 1..f.len() {
        let s: BigInt = (1..=k).map(|i| &f[i] * &b[k - i]).sum();
        b.push(md(&(-s * &b0), q));
    }
    b
}

/// `f(g(x))` for `g(0) = 0`.
pub fn compose(f: &[BigInt], g: &[BigInt], q: &BigInt) -> Poly {
    assert!(md(&g[0], q).is_zero());
    let m = f.len().min(g.len());
    let mut acc = vec![BigInt::zero(); m];
    for c in f[..m].iter().rev() {
        acc = mul(&acc, &g[..m], q);
        acc[0] += c;
        acc = reduce(&acc, q);
    }
    acc
}

/// Exact `C(a, n)` for an integer `a` of any sign.
pub fn binom(a: &BigInt, n: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= a - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    assert!((&num % &den).is_zero());
    num / den
}

/// `(1 - x)^a` for an integer `a`.
pub fn one_minus_x_pow(a: &BigInt, m: usize, q: &BigInt) -> Poly {
    (0..m as u64)
        .map(|n| {
            let c = binom(a, n);
            md(&if n % 2 == 1 { -c } else { c }, q)
        })
        .collect()
}

/// `ψ_a` on `β^weight f`: `a^{-weight} f(1 - (1 - x)^a)`.
pub fn psi(a: &BigInt, f: &[BigInt], weight: i64, q: &BigInt) -> Poly {
    let mut inner = one_minus_x_pow(a, f.len(), q);
    for c in inner.iter_mut() {
        *c = md(&-&*c, q);
    }
    inner[0] = md(&(&inner[0] + 1), q);
    let body = compose(f, &inner, q);
    let twist =
        if weight >= 0 { inv_mod(&a.modpow(&BigInt::from(weight), q), q) } else { a.modpow(&BigInt::from(-weight), q) };
    body.iter().map(|c| md(&(c * &twist), q)).collect()
}

pub fn factorial_valuation(n: u64, p: u64) -> u32 {
    (1..=n).map(|k| val(&BigInt::from(k), p, 64)).sum()
}

pub fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| (1..p - 1).all(|e| BigInt::from(g).modpow(&BigInt::from(e), &BigInt::from(p)) != BigInt::one()))
        .unwrap()
}

/// The `(p-1)`-st root of unity congruent to `a`, mod `p^n`.
pub fn teichmuller(a: u64, p: u64, n: u32) -> BigInt {
    let q = pw(p, n);
    BigInt::from(a).modpow(&pw(p, n), &q)
}

/// `log(f) mod p^n` for `f ≡ 1 mod p`, summing `(-1)^{k+1} y^k / k`.
pub fn log(f: &[BigInt], p: u64, n: u32) -> Poly {
    let terms = 2 * n as u64 + 4;
    let guard = (1..=terms).map(|k| val(&BigInt::from(k), p, 64)).max().unwrap();
    let w = pw(p, n + guard);
    let q = pw(p, n);
    let mut y = reduce(f, &w);
    y[0] -= 1;
    assert!(y.iter().all(|c| val(c, p, 1) >= 1), "log needs f = 1 mod p");
    let mut power = one(f.len());
    let mut acc = vec![BigInt::zero(); f.len()];
    for k in 1..=terms {
        power = mul(&power, &y, &w);
        let vk = val(&BigInt::from(k), p, 64);
        let unit = BigInt::from(k) / pw(p, vk);
        let inv = inv_mod(&unit, &w);
        for (a, c) in acc.iter_mut().zip(&power) {
            let t = (c / pw(p, vk)) * &inv;
            if k % 2 == 1 {
                *a += t;
            } else {
                *a -= t;
            }
        }
    }
    reduce(&acc, &q)
}

/// `exp(f) mod p^n` for `f ≡ 0 mod p`, summing `f^k / k!`.
pub fn exp(f: &[BigInt], p: u64, n: u32) -> Poly {
    let terms = 2 * n as u64 + 4;
    let guard = factorial_valuation(terms, p);
    let w = pw(p, n + guard);
    let q = pw(p, n);
    let y = reduce(f, &w);
    assert!(y.iter().all(|c| val(c, p, 1) >= 1), "exp needs f = 0 mod p");
    let mut power = one(f.len());
    let mut acc = one(f.len());
    let mut fact = BigInt::one();
    for k in 1..=terms {
        power = mul(&power, &y, &w);
        fact *= BigInt::from(k);
        let v = val(&fact, p, 64);
        let inv = inv_mod(&(&fact / pw(p, v)), &w);
        for (a, c) in acc.iter_mut().zip(&power) {
            *a += (c / pw(p, v)) * &inv;
        }
    }
    reduce(&acc, &q)
}

/// Rezk's logarithm `-(1/p) log(ψ_p(u) / u^p) mod p^n`, with `u` taken as
/// exact integers.
pub fn rezk_log(u: &[BigInt], p: u64, n: u32) -> Poly {
    let w = pw(p, n + 1);
    let psi_u = psi(&BigInt::from(p), u, 0, &w);
    let ratio = mul(&psi_u, &inverse(&pow(u, p, &w), &w), &w);
    let l = log(&ratio, p, n + 1);
    let q = pw(p, n);
    l.iter()
        .map(|c| {
            assert!(val(c, p, 1) >= 1);
            md(&-(c / BigInt::from(p)), &q)
        })
        .collect()
}

/// `l_p` on a scalar unit: `(1/p) log(c^{p-1}) mod p^n`.
pub fn pi0_log(c: &BigInt, p: u64, n: u32) -> BigInt {
    let w = pw(p, n + 1);
    let l = log(&[c.modpow(&BigInt::from(p - 1), &w)], p, n + 1);
    md(&(&l[0] / BigInt::from(p)), &pw(p, n))
}

/// `π_k = (1/(p-1)) Σ_i ζ^{-ik} ψ_{ζ^i}` on `β^weight f`, mod `p^n`.
pub fn projector(k: u64, f: &[BigInt], weight: i64, p: u64, n: u32) -> Poly {
    let guard = factorial_valuation(f.len() as u64, p);
    let w = pw(p, n + guard);
    let q = pw(p, n);
    let g = primitive_root(p);
    let mut acc = vec![BigInt::zero(); f.len()];
    for i in 0..p - 1 {
        let gi = BigInt::from(g).modpow(&BigInt::from(i), &BigInt::from(p)).to_u64().unwrap();
        let zeta = teichmuller(gi, p, n + guard);
        let coeff = inv_mod(&zeta.modpow(&BigInt::from(k), &w), &w);
        let term = psi(&zeta, f, weight, &w);
        for (a, c) in acc.iter_mut().zip(&term) {
            *a += c * &coeff;
        }
    }
    let inv = inv_mod(&BigInt::from(p - 1), &q);
    acc.iter().map(|c| md(&(c * &inv), &q)).collect()
}

/// Matrix of `u - 1` on the first `size` Bott classes.
pub fn toeplitz(u: &[BigInt], size: usize) -> Vec<Vec<BigInt>> {
    (0..size)
        .map(|j| {
            (0..size)
                .map(|i| match i.checked_sub(j) {
                    Some(0) => &u[0] - 1,
                    Some(d) => u[d].clone(),
                    None => BigInt::zero(),
                })
                .collect()
        })
        .collect()
}

/// Cokernel exponents over `Z/p^n` by Euclidean row and column reduction.
pub fn snf_euclid(a: &[Vec<BigInt>], p: u64, n: u32) -> Vec<u32> {
    let q = pw(p, n);
    let mut a: Vec<Vec<BigInt>> = a.iter().map(|r| reduce(r, &q)).collect();
    let size = a.len();
    let mut out = Vec::new();
    for t in 0..size {
        let Some((r0, c0)) = (t..size).flat_map(|r| (t..size).map(move |c| (r, c))).find(|&(r, c)| !a[r][c].is_zero())
        else {
            out.extend(std::iter::repeat_n(n, size - t));
            break;
        };
        a.swap(t, r0);
        for row in a.iter_mut() {
            row.swap(t, c0);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..size {
                if a[r][t].is_zero() {
                    continue;
                }
                dirty = true;
                let (x, y) = (a[t][t].clone(), a[r][t].clone());
                if (&y % &x).is_zero() {
                    let f = &y / &x;
                    for c in t..size {
                        a[r][c] = md(&(&a[r][c] - &f * &a[t][c]), &q);
                    }
                } else {
                    let e = x.extended_gcd(&y);
                    let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
                    for c in t..size {
                        let (top, bot) = (a[t][c].clone(), a[r][c].clone());
                        a[t][c] = md(&(&e.x * &top + &e.y * &bot), &q);
                        a[r][c] = md(&(&xg * &bot - &yg * &top), &q);
                    }
                }
            }
            for c in t + 1..size {
                if a[t][c].is_zero() {
                    continue;
                }
                dirty = true;
                let (x, y) = (a[t][t].clone(), a[t][c].clone());
                if (&y % &x).is_zero() {
                    let f = &y / &x;
                    for r in t..size {
                        a[r][c] = md(&(&a[r][c] - &f * &a[r][t]), &q);
                    }
                } else {
                    let e = x.extended_gcd(&y);
                    let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
                    for r in t..size {
                        let (left, right) = (a[r][t].clone(), a[r][c].clone());
                        a[r][t] = md(&(&e.x * &left + &e.y * &right), &q);
                        a[r][c] = md(&(&xg * &right - &yg * &left), &q);
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        out.push(val(&a[t][t], p, n));
    }
    out.sort_unstable();
    out
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let s = &m[0][c] * det(&minor);
            if c % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// `min(v_p(d_k), n)` where `d_k` is the gcd of the `k × k` minors.
pub fn determinantal_valuations(a: &[Vec<BigInt>], p: u64, n: u32) -> Vec<u32> {
    let size = a.len();
    (1..=size)
        .map(|k| {
            let mut best = n;
            for rows in subsets(size, k) {
                for cols in subsets(size, k) {
                    let minor: Vec<Vec<BigInt>> =
                        rows.iter().map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect()).collect();
                    best = best.min(val(&det(&minor).abs(), p, n));
                }
            }
            best
        })
        .collect()
}

/// Every `u mod (p^2, x^p)` with `u_0 ≡ omega mod p`, `u_1 = -a u_0` and
/// `ψ_p(u) ≡ u^p (1 - p t)`.
pub fn exhaustive(p: u64, t: &[u64], omega: u64, a: u64) -> Vec<Vec<u64>> {
    let m = p as usize;
    let q = p * p;
    let mul = |f: &[u64], g: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; m];
        for i in 0..m {
            for j in 0..m - i {
                out[i + j] = (out[i + j] + f[i] * g[j]) % q;
            }
        }
        out
    };
    let pow = |f: &[u64], e: u64| (0..e).fold(one_u64(m), |acc, _| mul(&acc, f));
    // ψ_p(x) = 1 - (1 - x)^p
    let inner: Vec<u64> = (0..m as u64)
        .map(|n| {
            let c = binom(&BigInt::from(p), n).to_i128().unwrap();
            let c = if n % 2 == 1 { -c } else { c };
            let v = if n == 0 { 1 - c } else { -c };
            v.rem_euclid(q as i128) as u64
        })
        .collect();
    let mut rhs_factor: Vec<u64> = t.iter().map(|&c| (q - (p * c) % q) % q).collect();
    rhs_factor[0] = (rhs_factor[0] + 1) % q;
    let mut sols = Vec::new();
    let free = m - 2;
    for d in 0..p {
        let c0 = omega % p + p * d;
        let c1 = (q - (a % q) * c0 % q) % q;
        for code in 0..q.pow(free as u32) {
            let mut u = vec![c0, c1];
            let mut rest = code;
            for _ in 0..free {
                u.push(rest % q);
                rest /= q;
            }
            let mut psi_u = vec![0u64; m];
            for c in u.iter().rev() {
                psi_u = mul(&psi_u, &inner);
                psi_u[0] = (psi_u[0] + c) % q;
            }
            if psi_u == mul(&pow(&u, p), &rhs_factor) {
                sols.push(u);
            }
        }
    }
    sols
}

fn one_u64(m: usize) -> Vec<u64> {
    let mut v = vec![0; m];
    v[0] = 1;
    v
}
