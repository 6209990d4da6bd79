//! Reference values for one prime, checked and tabulated.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adams::{self, KClass, SphereUnit};
use crate::error::{Error, Result};
use crate::expr::parse_series;
use crate::padic::PadicInt;
use crate::rezk::{kernel_check, rezk_log, solve_unit_int, UnitSeries};
use crate::series::TruncatedSeries;
use crate::snf::{smith_divisors, toeplitz_matrix, triangular_det_valuation};
use crate::thh::{self, ExtensionSpec, Factor};

pub const SUPPORTED_PRIMES: [u64; 3] = [3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: String,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

type Outcome = Result<(String, String, bool)>;

struct Check {
    id: &'static str,
    name: &'static str,
    primes: &'static [u64],
    run: fn(u64) -> Outcome,
}

const ALL: &[u64] = &[3, 5, 7];

const CHECKS: &[Check] = &[
    Check { id: "1", name: "pi0 logarithm and its kernel", primes: ALL, run: pi0_values },
    Check { id: "2", name: "sphere values", primes: &[3, 5], run: sphere_values },
    Check { id: "3", name: "line-bundle kernel", primes: ALL, run: line_kernel },
    Check { id: "4", name: "projector table mod p", primes: ALL, run: projector_table },
    Check { id: "5", name: "f_k shape", primes: &[5, 7], run: f_k_shape },
    Check { id: "6", name: "worked example at p = 3", primes: &[3], run: worked_example },
    Check { id: "6s", name: "worked example target through kappa", primes: &[3], run: worked_example_kappa },
    Check { id: "7", name: "solver vs exhaustive search", primes: &[3, 5], run: oracle_agreement },
    Check { id: "8", name: "torsion ranks", primes: ALL, run: torsion_ranks },
    Check { id: "9a", name: "psi_a psi_b = psi_ab", primes: ALL, run: prop_adams },
    Check { id: "9b", name: "projector calculus", primes: ALL, run: prop_projectors },
    Check { id: "9c", name: "log/exp round trips", primes: ALL, run: prop_log_exp },
    Check { id: "9d", name: "binomial exponent homomorphism", primes: ALL, run: prop_binomial },
    Check { id: "9e", name: "SNF exponent sum = det valuation", primes: ALL, run: prop_snf },
    Check { id: "10", name: "sign of alpha_p", primes: ALL, run: alpha_sign },
    Check { id: "s1", name: "substitution x^2 at psi_3(x) - 1", primes: &[3], run: compose_example },
    Check { id: "s2", name: "exp(-3(b + b x^2))", primes: &[3], run: exp_example },
    Check { id: "s3", name: "pi(beta L) = beta (L - L^-1)/2", primes: &[3], run: pi_beta_l },
    Check { id: "s4", name: "kappa(beta x^n) = n x^(n-1) - n x^n", primes: ALL, run: kappa_monomials },
    Check { id: "s5", name: "restriction of pi_0(beta a_0)", primes: ALL, run: restrict_constant },
    Check { id: "s6", name: "B-summand target mod p", primes: ALL, run: b_target_mod_p },
    Check { id: "s7", name: "unit shapes", primes: ALL, run: unit_shapes },
    Check { id: "s8", name: "normal forms", primes: ALL, run: normal_forms },
    Check { id: "s9", name: "(u - 1)(beta_i) = p beta_i + beta_(i-k)", primes: ALL, run: toeplitz_columns },
    Check { id: "s10", name: "kernel of the solved unit", primes: &[3], run: kernel_of_solved },
    Check { id: "s11", name: "rezk_log(omega u) = rezk_log(u)", primes: ALL, run: teichmuller_invariance },
];

/// One row per check; checks that do not apply to `prime` are skipped.
pub fn verify(prime: u64) -> Result<Vec<Row>> {
    if !SUPPORTED_PRIMES.contains(&prime) {
        return Err(Error::InvalidPrime(prime));
    }
    Ok(CHECKS
        .iter()
        .map(|c| {
            let (expected, actual, status) = if !c.primes.contains(&prime) {
                ("-".to_string(), format!("not applicable at p = {prime}"), Status::Skip)
            } else {
                match (c.run)(prime) {
                    Ok((e, a, ok)) => (e, a, if ok { Status::Pass } else { Status::Fail }),
                    Err(err) => ("no error".to_string(), err.to_string(), Status::Fail),
                }
            };
            Row { id: c.id.into(), name: c.name.into(), expected, actual, status }
        })
        .collect())
}

pub fn all_passed(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.status != Status::Fail)
}

/// Fixed-width text table.
pub fn render_table(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(out, "{status}  {:<4} {}", r.id, r.name);
        if r.status != Status::Skip {
            let _ = writeln!(out, "            expected: {}", r.expected);
        }
        let _ = writeln!(out, "            actual:   {}", r.actual);
    }
    out
}

fn rng(p: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(p * 1000 + salt)
}

fn series(p: u64, n: u32, m: usize, v: &[i128]) -> Result<TruncatedSeries> {
    TruncatedSeries::from_ints(p, n, m, v)
}

fn residues(s: &TruncatedSeries) -> Vec<u128> {
    s.coefficients().iter().map(|c| c.residue()).collect()
}

fn random_series(r: &mut ChaCha8Rng, p: u64, n: u32, m: usize) -> Result<TruncatedSeries> {
    let q = (p as i128).pow(n);
    let v: Vec<i128> = (0..m).map(|_| r.random_range(0..q)).collect();
    series(p, n, m, &v)
}

fn random_unit(r: &mut ChaCha8Rng, p: u64, n: u32) -> Result<PadicInt> {
    let q = (p as i128).pow(n);
    loop {
        let a = r.random_range(0..q);
        if a % p as i128 != 0 {
            return PadicInt::new(p, n, a);
        }
    }
}

fn pi0_values(p: u64) -> Outcome {
    let expected: Vec<u64> = (0..p).map(|k| (p - k % p) % p).collect();
    let mut actual = Vec::new();
    for k in 0..p {
        actual.push(adams::pi0_log(&PadicInt::new(p, 4, 1 + (p * k) as i128)?)?.residue_mod_p());
    }
    let mut kernel = Vec::new();
    for a in 1..p {
        kernel.push(adams::pi0_log(&PadicInt::teichmuller(a, p, 4)?)?.is_zero());
    }
    let ok = expected == actual && kernel.iter().all(|&z| z);
    Ok((
        format!("l(1+pk) mod p = {expected:?}; l(omega(a)) = 0"),
        format!("{actual:?}; kernel zero for {}/{} lifts", kernel.iter().filter(|&&z| z).count(), p - 1),
        ok,
    ))
}

fn sphere_values(p: u64) -> Outcome {
    let q = (p * p) as i128;
    let expected: Vec<i128> =
        (1..=4u32).map(|n| if n == 1 { 0 } else { (1 - (p as i128).pow(n - 1)).rem_euclid(q) }).collect();
    let mut actual = Vec::new();
    for n in 1..=4 {
        let k = PadicInt::new(p, 3, 1)?;
        actual.push(adams::sphere_log(&SphereUnit { n, k })?.reduce(2)?.residue() as i128);
    }
    let k = PadicInt::new(p, 3, 1 + 2 * p as i128)?;
    let n1 = adams::sphere_log(&SphereUnit { n: 1, k })?.reduce(2)?.is_zero();
    Ok((
        format!("l(1+eps) mod p^2 for n = 1..4: {expected:?}"),
        format!("{actual:?}; n = 1 with k = 1+2p gives {}", if n1 { "0" } else { "nonzero" }),
        expected == actual && n1,
    ))
}

fn line_kernel(p: u64) -> Outcome {
    let m = 2 * p as usize;
    let mut failures = Vec::new();
    for a in -3..=3 {
        let u = UnitSeries::new(TruncatedSeries::one_minus_x_pow(p, 6, m, a)?)?;
        if !rezk_log(&u)?.is_zero() {
            failures.push(a.to_string());
        }
    }
    let a = random_unit(&mut rng(p, 3), p, 6)?;
    let u = UnitSeries::new(TruncatedSeries::binomial_one_minus_pow(&a, m)?)?;
    if !rezk_log(&u)?.is_zero() {
        failures.push(format!("{a}"));
    }
    Ok((
        format!("l_p((1-x)^a) = 0 mod x^{m} for a in -3..3 and a = {}", a.residue()),
        if failures.is_empty() { "all zero".into() } else { format!("nonzero for {}", failures.join(", ")) },
        failures.is_empty(),
    ))
}

fn projector_table(p: u64) -> Outcome {
    let m = p as usize;
    let mut expected = String::new();
    let mut actual = String::new();
    for n in 0..m {
        let mut x = vec![0i128; n + 1];
        x[n] = 1;
        let out = adams::projector(0, &KClass::weight_zero(series(p, 1, m, &x)?))?.body;
        for a in 0..m {
            let e = (a == 0 && n == 0) || (a == m - 1 && n > 0);
            expected.push(if e { '1' } else { '0' });
            actual.push_str(&out.coeff(a).residue().to_string());
        }
        if n + 1 < m {
            expected.push('|');
            actual.push('|');
        }
    }
    let ok = expected == actual;
    Ok((expected, actual, ok))
}

fn f_k_shape(p: u64) -> Outcome {
    let mut lead = Vec::new();
    let mut ok = true;
    for k in 1..=p - 2 {
        let out = adams::projector(k, &KClass::weight_zero(series(p, 3, p as usize, &[0, 1])?))?.body;
        ok &= (0..k as usize).all(|j| out.coeff(j).is_zero()) && out.coeff(k as usize).is_unit();
        lead.push(out.coeff(k as usize).residue_mod_p());
    }
    Ok((
        format!("[pi_k(x)]_j = 0 for j < k, [pi_k(x)]_k a unit, k = 1..{}", p - 2),
        format!("leading coefficients mod p: {lead:?}"),
        ok,
    ))
}

fn alpha3_target(sign: i128) -> Result<(PadicInt, TruncatedSeries)> {
    let a3 = adams::alpha(3, 2)?;
    let half = PadicInt::new(3, 2, 2)?.invert()?;
    let t = series(3, 2, 3, &[1])?.checked_add(&series(3, 2, 3, &[0, 0, 1])?.scale(&half)?)?;
    Ok((a3, t.scale(&a3.scale(sign))?))
}

fn worked_example(_: u64) -> Outcome {
    let (a3, t) = alpha3_target(-1)?;
    let u = solve_unit_int(&t, 1, 0)?;
    let c = u.body().coefficients();
    let c0 = (PadicInt::new(3, 2, 1)? + a3.scale(3)).residue();
    let c2 = a3.residue_mod_p();
    let ok = c[0].residue() == c0 && c[1].is_zero() && c[2].residue_mod_p() == c2;
    Ok((
        format!("alpha_3 = {}: c0 = 1+3a = {c0} mod 9, c1 = 0, c2 = a = {c2} mod 3", a3.residue()),
        format!("c0 = {} mod 9, c1 = {}, c2 = {} mod 3", c[0].residue(), c[1].residue(), c[2].residue_mod_p()),
        ok,
    ))
}

fn worked_example_kappa(_: u64) -> Outcome {
    let spec = ExtensionSpec { truncation: Some(3), precision: 2, ..ExtensionSpec::example("worked", 3)? };
    let (t, _) = thh::build_target(&spec)?;
    let (_, plus) = alpha3_target(1)?;
    let u = thh::compute_unit(&spec)?;
    let a3 = adams::alpha(3, 2)?;
    let c0 = (PadicInt::new(3, 2, 1)? - a3.scale(3)).residue();
    let ok = t == plus && u.body().coeff(0).residue() == c0;
    Ok((
        format!("kappa(pi(beta g)) = +alpha(L + L^-1)/2, so c0 = 1-3a = {c0} mod 9 (not -alpha(L + L^-1)/2)"),
        format!("target {}, c0 = {} mod 9", t.polynomial_text(), u.body().coeff(0).residue()),
        ok,
    ))
}

/// Every `u mod (p^2, x^p)` with `u_0 = omega mod p`, `u_1 = -a u_0` and
/// `ψ_p(u) = u^p (1 - p t)`, by enumeration over plain integers.
fn exhaustive(p: u64, t: &[u64], omega: u64, a: i64) -> Vec<Vec<u64>> {
    let m = p as usize;
    let q = p * p;
    let mul = |f: &[u64], g: &[u64]| {
        let mut out = vec![0u64; m];
        for i in 0..m {
            for j in 0..m - i {
                out[i + j] = (out[i + j] + f[i] * g[j]) % q;
            }
        }
        out
    };
    // ψ_p(x)^i for the substitution.
    let mut binom = vec![0u64; m];
    let mut c = 1u64;
    for (n, b) in binom.iter_mut().enumerate() {
        *b = c % q;
        c = c * (p - n as u64) / (n as u64 + 1);
    }
    let psi_x: Vec<u64> = (0..m)
        .map(|n| {
            if n == 0 {
                0
            } else if n % 2 == 1 {
                binom[n]
            } else {
                (q - binom[n]) % q
            }
        })
        .collect();
    let mut psi_pows = vec![{
        let mut one = vec![0; m];
        one[0] = 1;
        one
    }];
    for i in 1..m {
        psi_pows.push(mul(&psi_pows[i - 1], &psi_x));
    }
    let rhs_factor: Vec<u64> = (0..m).map(|i| ((if i == 0 { 1 } else { 0 }) + q - (p * t[i]) % q) % q).collect();
    let mut found = Vec::new();
    let tail = (q as usize).pow(m as u32 - 2);
    for c0 in (0..q).filter(|c| c % p == omega % p) {
        let c1 = ((q as i64 - (a.rem_euclid(q as i64) * c0 as i64) % q as i64) % q as i64) as u64;
        for idx in 0..tail {
            let mut u = vec![c0, c1];
            let mut rest = idx;
            for _ in 2..m {
                u.push((rest % q as usize) as u64);
                rest /= q as usize;
            }
            let mut psi = vec![0u64; m];
            for (i, pw) in psi_pows.iter().enumerate() {
                for k in 0..m {
                    psi[k] = (psi[k] + u[i] * pw[k]) % q;
                }
            }
            let mut up = u.clone();
            for _ in 1..p {
                up = mul(&up, &u);
            }
            if psi == mul(&up, &rhs_factor) {
                found.push(u);
            }
        }
    }
    found
}

fn oracle_agreement(p: u64) -> Outcome {
    let trials = if p == 3 { 20 } else { 5 };
    let m = p as usize;
    let q = (p * p) as i128;
    let mut r = rng(p, 7);
    let mut bad = Vec::new();
    for trial in 0..trials {
        let mut t: Vec<i128> = (0..m).map(|_| r.random_range(0..q)).collect();
        t[1] = 0;
        let target = series(p, 2, m, &t)?;
        let u = solve_unit_int(&target, 1, 0)?;
        let ur: Vec<u64> =
            u.body().coefficients().iter().map(|c| c.reduce(2).map(|c| c.residue() as u64)).collect::<Result<_>>()?;
        let tp: Vec<u64> = t.iter().map(|&c| (c % p as i128) as u64).collect();
        let sols = exhaustive(p, &tp, 1, 0);
        let congruent = |s: &Vec<u64>| s[0] == ur[0] && s[1] == ur[1] && (2..m).all(|j| s[j] % p == ur[j] % p);
        let ok = sols.contains(&ur) && sols.len() == (p as usize).pow(m as u32 - 2) && sols.iter().all(congruent);
        if !ok {
            bad.push(format!("trial {trial}: {} solutions", sols.len()));
        }
    }
    Ok((
        format!("{trials} random targets: search finds exactly the p^(p-2) lifts of the solved u"),
        if bad.is_empty() { format!("{trials}/{trials} agree") } else { bad.join("; ") },
        bad.is_empty(),
    ))
}

fn torsion_ranks(p: u64) -> Outcome {
    let mut specs = vec![("B".to_string(), ExtensionSpec::new(p), p as usize - 1)];
    specs.push(("line a=1".into(), ExtensionSpec::new(p).with_factor(Factor::LineBundle { a: 1 }), 1));
    for k in 2..=p - 2 {
        specs.push((
            format!("summand {k}"),
            ExtensionSpec::new(p).with_factor(Factor::Summand { k, coeff: 1 }),
            k as usize,
        ));
    }
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    let mut ok = true;
    for (name, spec, want) in specs {
        expected.push(format!("{name}: {want}"));
        match thh::torsion_rank(&spec) {
            Ok(report) => {
                ok &= report.rank == want && report.homotopy.odd == "0";
                actual.push(format!("{name}: {}", report.rank));
            }
            Err(e) => {
                ok = false;
                actual.push(format!("{name}: {e}"));
            }
        }
    }
    Ok((expected.join(", "), actual.join(", "), ok))
}

fn count_outcome(desc: &str, total: usize, failures: usize) -> Outcome {
    Ok((format!("{desc} on {total} random instances"), format!("{}/{total} hold", total - failures), failures == 0))
}

fn prop_adams(p: u64) -> Outcome {
    let mut r = rng(p, 9);
    let mut fail = 0;
    for _ in 0..100 {
        let (a, b) = (random_unit(&mut r, p, 4)?, random_unit(&mut r, p, 4)?);
        let c = KClass::new(r.random_range(-2..=2), random_series(&mut r, p, 4, p as usize + 1)?);
        let lhs = adams::adams(&a, &adams::adams(&b, &c)?)?;
        if lhs != adams::adams(&(a * b), &c)? {
            fail += 1;
        }
    }
    count_outcome("psi_a(psi_b(c)) = psi_ab(c)", 100, fail)
}

fn prop_projectors(p: u64) -> Outcome {
    let mut r = rng(p, 10);
    let mut fail = 0;
    for _ in 0..100 {
        let c = KClass::weight_zero(random_series(&mut r, p, 3, p as usize)?);
        let pis: Vec<KClass> = (0..=p - 2).map(|k| adams::projector(k, &c)).collect::<Result<_>>()?;
        let mut total = TruncatedSeries::zero(p, 3, p as usize)?;
        let mut ok = true;
        for (k, pk) in pis.iter().enumerate() {
            total = total.checked_add(&pk.body)?;
            let j = r.random_range(0..=p - 2);
            let pj = adams::projector(j, pk)?;
            ok &= if j == k as u64 { pj == *pk } else { pj.body.is_zero() };
        }
        if !ok || total != c.body {
            fail += 1;
        }
    }
    count_outcome("pi_j pi_k = delta_jk pi_k and sum_k pi_k = 1", 100, fail)
}

fn prop_log_exp(p: u64) -> Outcome {
    let mut r = rng(p, 11);
    let mut fail = 0;
    for _ in 0..100 {
        let z = random_series(&mut r, p, 4, 4)?.scale_int(p as i128);
        let z = z.reduce_precision(4)?;
        let u = z.exp()?;
        let zp = PadicInt::new(p, 4, p as i128 * r.random_range(0..1000))?;
        let up = PadicInt::new(p, 4, 1 + p as i128 * r.random_range(0..1000))?;
        let ok = u.log()? == z
            && u.log()?.exp()? == u
            && zp.exp_padic()?.log_1unit()? == zp
            && up.log_1unit()?.exp_padic()? == up;
        if !ok {
            fail += 1;
        }
    }
    count_outcome("log(exp z) = z and exp(log u) = u", 100, fail)
}

fn prop_binomial(p: u64) -> Outcome {
    let mut r = rng(p, 12);
    let mut fail = 0;
    let m = p as usize + 2;
    for _ in 0..100 {
        let q = (p as i128).pow(5);
        let a = PadicInt::new(p, 5, r.random_range(0..q))?;
        let b = PadicInt::new(p, 5, r.random_range(0..q))?;
        let fa = TruncatedSeries::binomial_one_minus_pow(&a, m)?;
        let fb = TruncatedSeries::binomial_one_minus_pow(&b, m)?;
        let fab = TruncatedSeries::binomial_one_minus_pow(&(a + b), m)?;
        let inv = TruncatedSeries::binomial_one_minus_pow(&-a, m)?;
        if fa.checked_mul(&fb)? != fab || !fa.checked_mul(&inv)?.eq_at_common_precision(&series(p, 5, m, &[1])?) {
            fail += 1;
        }
    }
    count_outcome("(1-x)^a (1-x)^b = (1-x)^(a+b)", 100, fail)
}

fn prop_snf(p: u64) -> Outcome {
    let mut r = rng(p, 13);
    let mut fail = 0;
    let m = 2 * p as usize;
    let n = 2 * m as u32 + 1;
    for _ in 0..100 {
        let mut u = random_series(&mut r, p, n.min(8), m)?.lift(n)?;
        let v = r.random_range(1..=2u32);
        let c0 = PadicInt::new(p, n, 1 + (p as i128).pow(v) * (1 + p as i128 * r.random_range(0..50)))?;
        let k = r.random_range(1..m);
        for j in 1..k {
            let c = u.coeff(j).scale(p as i128);
            u.set_coeff(j, c)?;
        }
        u.set_coeff(0, c0)?;
        let mat = toeplitz_matrix(&u, m)?;
        let d = smith_divisors(&mat, n)?;
        if d.iter().sum::<u32>() != triangular_det_valuation(&mat) {
            fail += 1;
        }
    }
    count_outcome("sum of elementary divisors = v_p(det)", 100, fail)
}

fn alpha_sign(p: u64) -> Outcome {
    let a = adams::alpha(p, 4)?;
    let direct = adams::pi0_log(&PadicInt::new(p, 5, 1 - p as i128)?)?;
    let sign = if a.residue_mod_p() == 1 {
        "+1"
    } else if a.residue_mod_p() == p - 1 {
        "-1"
    } else {
        "other"
    };
    Ok((
        "alpha_p a unit equal to pi0_log(1-p); l(1+pk) = -k at k = -1 gives +1 mod p".into(),
        format!("alpha_p = {} mod {p}^4, resolved sign {sign} mod p (-1 ruled out)", a.residue()),
        a.is_unit() && a == direct && a.residue_mod_p() == 1,
    ))
}

fn compose_example(_: u64) -> Outcome {
    let f = series(3, 4, 3, &[0, 0, 1])?;
    let out = f.compose(&series(3, 4, 4, &[0, 3, -3, 1])?)?;
    let ok = residues(&out) == vec![0, 0, 9];
    Ok(("9*x^2".into(), out.polynomial_text(), ok))
}

fn exp_example(_: u64) -> Outcome {
    let mut ok = true;
    for b in 0..9 {
        let e = series(3, 2, 3, &[-3 * b, 0, 3 * b])?.exp()?;
        ok &= e == series(3, 2, 3, &[1 - 3 * b, 0, 3 * b])?;
    }
    Ok((
        "1 - 3b + 3b x^2 mod (9, x^3) for b = 0..8".into(),
        if ok { "matches for all b" } else { "mismatch" }.into(),
        ok,
    ))
}

fn pi_beta_l(_: u64) -> Outcome {
    let pi = adams::projector(0, &KClass::new(1, parse_series("L", 3, 4, 5)?))?;
    let expect = parse_series("(L - L^-1)/2", 3, 4, 5)?;
    Ok((expect.polynomial_text(), pi.body.polynomial_text(), pi.body == expect))
}

fn kappa_monomials(p: u64) -> Outcome {
    let m = p as usize + 1;
    let mut ok = true;
    for n in 1..m {
        let mut x = vec![0i128; m];
        x[n] = 1;
        let out = adams::kappa(&KClass::new(1, series(p, 3, m, &x)?))?.known_part()?;
        let mut e = vec![0i128; m - 1];
        e[n - 1] = n as i128;
        if n < m - 1 {
            e[n] = -(n as i128);
        }
        ok &= out == series(p, 3, m - 1, &e)?;
    }
    Ok((format!("n x^(n-1) - n x^n for n = 1..{}", m - 1), if ok { "matches" } else { "mismatch" }.into(), ok))
}

fn restrict_constant(p: u64) -> Outcome {
    let (a0, a1) = adams::restrict_to_s2(&adams::projector(0, &KClass::new(1, series(p, 3, p as usize, &[5])?))?)?;
    Ok(("(0, 0)".into(), format!("({}, {})", a0.residue(), a1.residue()), a0.is_zero() && a1.is_zero()))
}

fn b_target_mod_p(p: u64) -> Outcome {
    let spec = ExtensionSpec { truncation: Some(p as usize), ..ExtensionSpec::new(p) };
    let (t, _) = thh::build_target(&spec)?;
    let a1 = t.coeff(0).residue_mod_p();
    let got: Vec<u64> = t.coefficients().iter().map(|c| c.residue_mod_p()).collect();
    let mut want = vec![0; p as usize];
    want[0] = a1;
    want[p as usize - 1] = (p - a1) % p;
    Ok((format!("a1 - a1 x^(p-1) mod p with a1 = {a1} (b = -a1, not +a1)"), format!("{got:?}"), got == want))
}

fn unit_shapes(p: u64) -> Outcome {
    let b = thh::compute_unit(&ExtensionSpec::new(p))?;
    let line = thh::compute_unit(&ExtensionSpec::new(p).with_factor(Factor::LineBundle { a: 1 }))?;
    let nb = thh::normal_form(&b)?;
    let nl = thh::normal_form(&line)?;
    Ok((
        format!("B: 1 + p.unit + unit.x^{}; line: 1 + p.unit + unit.x", p - 1),
        format!("B: (v, k) = ({}, {}); line: ({}, {})", nb.v, nb.k, nl.v, nl.k),
        nb == thh::Profile { v: 1, k: p as usize - 1 } && nl == thh::Profile { v: 1, k: 1 },
    ))
}

fn normal_forms(p: u64) -> Outcome {
    let m = p as usize;
    let mut a = vec![0i128; m];
    a[0] = 1 + p as i128;
    a[m - 1] = 1;
    let f1 = thh::normal_form(&UnitSeries::new(series(p, 3, m, &a)?)?)?;
    let f2 = thh::normal_form(&UnitSeries::new(series(p, 3, m, &[1 + p as i128, 1])?)?)?;
    let one = thh::normal_form(&UnitSeries::new(series(p, 3, m, &[1])?)?);
    Ok((
        format!("(1, {}), (1, 1), indeterminate", p - 1),
        format!(
            "({}, {}), ({}, {}), {}",
            f1.v,
            f1.k,
            f2.v,
            f2.k,
            if one.is_err() { "indeterminate" } else { "resolved" }
        ),
        f1.v == 1 && f1.k == m - 1 && f2.v == 1 && f2.k == 1 && matches!(one, Err(Error::Indeterminate(_))),
    ))
}

fn toeplitz_columns(p: u64) -> Outcome {
    let k = p as usize - 1;
    let m = 2 * p as usize;
    let mut a = vec![0i128; m];
    a[0] = 1 + p as i128;
    a[k] = 1;
    let mat = toeplitz_matrix(&series(p, 4, m, &a)?, m)?;
    let mut ok = true;
    for i in 0..m {
        for j in 0..m {
            let want = if j == i {
                p as u128
            } else if i >= k && j == i - k {
                1
            } else {
                0
            };
            ok &= mat[j][i].residue() == want;
        }
    }
    Ok((format!("column i = p beta_i + beta_(i-{k})"), if ok { "matches" } else { "mismatch" }.into(), ok))
}

fn kernel_of_solved(_: u64) -> Outcome {
    let (_, t) = alpha3_target(-1)?;
    let u = solve_unit_int(&t, 1, 0)?;
    let (omega, line, core) = kernel_check(&u)?;
    Ok((
        "(1, 0, u)".into(),
        format!("({omega}, {}, {})", line.residue(), if core == u { "u" } else { "other" }),
        omega == 1 && line.is_zero() && core == u,
    ))
}

fn teichmuller_invariance(p: u64) -> Outcome {
    let mut r = rng(p, 14);
    let mut fail = 0;
    for _ in 0..20 {
        let mut body = random_series(&mut r, p, 4, p as usize)?;
        body.set_coeff(0, random_unit(&mut r, p, 4)?)?;
        let u = UnitSeries::new(body)?;
        let w = PadicInt::teichmuller(r.random_range(1..p), p, 4)?;
        let wu = UnitSeries::new(u.body().scale(&w)?)?;
        if rezk_log(&wu)? != rezk_log(&u)? {
            fail += 1;
        }
    }
    count_outcome("l_p(omega u) = l_p(u)", 20, fail)
}
