//! K-theory classes of CP^∞ with a Bott weight, Adams operations, the
//! Adams-summand projectors and the transgression κ.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::series::TruncatedSeries;

/// `β^weight · series(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KClass {
    pub weight: i64,
    #[serde(rename = "series")]
    pub body: TruncatedSeries,
}

impl KClass {
    pub fn new(weight: i64, body: TruncatedSeries) -> Self {
        KClass { weight, body }
    }

    pub fn weight_zero(body: TruncatedSeries) -> Self {
        KClass { weight: 0, body }
    }

    pub fn prime(&self) -> u64 {
        self.body.prime()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::Weight(format!("cannot add weights {} and {}", self.weight, other.weight)));
        }
        Ok(KClass { weight: self.weight, body: self.body.checked_add(&other.body)? })
    }
}

/// `1 + k ε` in `K^0(S^{2n})` with `ε² = 0` and `ψ_a(ε) = a^n ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereUnit {
    pub n: u32,
    pub k: PadicInt,
}

/// `ψ_a(x) = 1 - (1 - x)^a` for a p-adic unit `a`.
fn psi_of_x(a: &PadicInt, truncation: usize) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(a.prime(), a.precision(), truncation)?;
    one.checked_sub(&TruncatedSeries::binomial_one_minus_pow(a, truncation)?)
}

fn twist(body: TruncatedSeries, a: &PadicInt, weight: i64) -> Result<TruncatedSeries> {
    if weight == 0 {
        return Ok(body);
    }
    let base = if weight > 0 { a.invert()? } else { *a };
    body.scale(&base.pow(weight.unsigned_abs()))
}

/// `ψ_a(β^m g) = a^{-m} β^m g(1 - (1 - x)^a)` for a unit `a`.
pub fn adams(a: &PadicInt, c: &KClass) -> Result<KClass> {
    if a.prime() != c.prime() {
        return Err(Error::PrimeMismatch(c.prime(), a.prime()));
    }
    if !a.is_unit() {
        return Err(Error::NonUnit(format!("Adams operation index {a}")));
    }
    let inner = psi_of_x(a, c.body.truncation())?;
    let body = twist(c.body.compose(&inner)?, a, c.weight)?;
    Ok(KClass { weight: c.weight, body })
}

/// `ψ_a` for an integer `a`. Non-units (in practice `a = p`) are only
/// defined on weight 0.
pub fn adams_int(a: i128, c: &KClass) -> Result<KClass> {
    let p = c.prime();
    let m = c.body.truncation();
    let n = c.body.precision();
    if a.rem_euclid(p as i128) == 0 && c.weight != 0 {
        return Err(Error::Weight(format!("ψ_{a} is only defined on weight 0, got weight {}", c.weight)));
    }
    let one = TruncatedSeries::one(p, n, m)?;
    let inner = one.checked_sub(&TruncatedSeries::one_minus_x_pow(p, n, m, a)?)?;
    let body = c.body.compose(&inner)?;
    let body = if c.weight == 0 { body } else { twist(body, &PadicInt::new(p, n, a)?, c.weight)? };
    Ok(KClass { weight: c.weight, body })
}

/// `ψ_p` on a weight-0 series, using exact integer binomials.
pub fn adams_p(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    Ok(adams_int(g.prime() as i128, &KClass::weight_zero(g.clone()))?.body)
}

/// The canonical root: Teichmüller lift of the smallest primitive root.
pub fn canonical_root(prime: u64) -> u64 {
    arith::primitive_roots(prime)[0]
}

/// All primitive roots mod `p`, for checking root independence.
pub fn primitive_roots(prime: u64) -> Vec<u64> {
    arith::primitive_roots(prime)
}

/// `π_k = (1/(p-1)) Σ_i ζ^{-ik} ψ_{ζ^i}`.
pub fn projector(k: u64, c: &KClass) -> Result<KClass> {
    projector_with_root(k, c, canonical_root(c.prime()))
}

/// `π_k` using the Teichmüller lift of `root` as ζ.
pub fn projector_with_root(k: u64, c: &KClass, root: u64) -> Result<KClass> {
    let p = c.prime();
    if k > p - 2 {
        return Err(Error::InvalidSpec(format!("projector index {k} outside 0..={}", p - 2)));
    }
    if arith::primitive_roots(p).binary_search(&root).is_err() {
        return Err(Error::InvalidSpec(format!("{root} is not a primitive root mod {p}")));
    }
    let m = c.body.truncation();
    let n = c.body.precision();
    // Extra digits so the binomial coefficients of ψ_ζ(x) stay at precision n.
    let guard = arith::factorial_valuation(m.saturating_sub(1) as u64, p);
    let zeta = PadicInt::teichmuller(root, p, n + guard)?;
    let zeta_inv = zeta.invert()?;
    let mut acc: Option<TruncatedSeries> = None;
    let mut zi = zeta.sibling(1);
    for i in 0..p - 1 {
        let term = adams(&zi, c)?.body.scale(&zeta_inv.pow(i * k))?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.checked_add(&term)?,
        });
        zi = zi * zeta;
    }
    let inv = PadicInt::new(p, n, (p - 1) as i128)?.invert()?;
    let body = acc.expect("p - 1 >= 2 terms").reduce_precision(n)?.scale(&inv)?;
    Ok(KClass { weight: c.weight, body })
}

/// `κ(β g) = g'(x)(1 - x)`.
///
/// The derivative loses the top coefficient; the result is padded back to
/// truncation `M` with that coefficient flagged as unknown.
pub fn kappa(c: &KClass) -> Result<TruncatedSeries> {
    if c.weight != 1 {
        return Err(Error::Weight(format!("κ needs weight 1, got {}", c.weight)));
    }
    let g = &c.body;
    let m = g.truncation();
    let p = g.prime();
    let n = g.precision();
    let mut out = TruncatedSeries::zero(p, n, m)?;
    if m > 1 {
        let d = g.derivative()?;
        let prod = d.checked_mul(&TruncatedSeries::from_ints(p, n, m - 1, &[1, -1])?)?;
        for (i, c) in prod.coefficients().iter().enumerate() {
            out.set_coeff(i, *c)?;
        }
    }
    Ok(out.with_top_unknown(true))
}

/// The body restricted along `S² → CP^∞`: `(c_0, c_1)` in `a_0 + a_1 ε`.
pub fn restrict_to_s2(c: &KClass) -> Result<(PadicInt, PadicInt)> {
    let g = &c.body;
    if g.truncation() < 2 || (g.truncation() == 2 && g.top_unknown()) {
        return Err(Error::PrecisionExhausted("restriction to S² needs the x coefficient".into()));
    }
    Ok((*g.coeff(0), *g.coeff(1)))
}

/// Rezk's logarithm on `1 + kε ∈ K^0(S^{2n})`, computed in the dual numbers
/// with `ψ_p(ε) = p^n ε`.
pub fn sphere_log(s: &SphereUnit) -> Result<PadicInt> {
    if s.n == 0 {
        return Err(Error::InvalidSpec("sphere dimension must be at least 2".into()));
    }
    let p = s.k.prime();
    let n = s.k.precision();
    let one = PadicInt::one(p, n)?;
    let u = TruncatedSeries::from_coefficients(vec![one, s.k])?;
    let pn = PadicInt::new(p, n, p as i128)?.pow(s.n as u64);
    let psi_eps = TruncatedSeries::from_coefficients(vec![PadicInt::zero(p, n)?, pn])?;
    let psi_u = u.compose(&psi_eps)?;
    let ratio = psi_u.checked_mul(&u.pow(p)?.invert_unit()?)?;
    let l = ratio.log()?.divide_by_p()?;
    Ok(-*l.coeff(1))
}

/// `l_p` on `π_0`: `-(1/p) log(u^{1-p})`, with the Teichmüller part of `u`
/// divided out first. Output precision is `N - 1`.
pub fn pi0_log(u: &PadicInt) -> Result<PadicInt> {
    if !u.is_unit() {
        return Err(Error::NonUnit(u.to_string()));
    }
    let p = u.prime();
    let one_unit = u.checked_mul(&u.teichmuller_part()?.invert()?)?;
    let w = one_unit.pow(p - 1).invert()?;
    Ok(-w.log_1unit()?.divide_by_p()?)
}

/// `α_p = l_p(1 - p)` at precision `N`.
pub fn alpha(prime: u64, precision: u32) -> Result<PadicInt> {
    pi0_log(&PadicInt::new(prime, precision + 1, 1 - prime as i128)?)
}
