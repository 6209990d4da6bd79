//! Rezk's logarithm `l_p(u) = -(1/p) log(ψ_p(u) / u^p)` on unit series and
//! its inverse.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adams::adams_p;
use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::series::TruncatedSeries;

/// A series with unit constant term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TruncatedSeries", into = "TruncatedSeries")]
pub struct UnitSeries {
    body: TruncatedSeries,
}

impl UnitSeries {
    pub fn new(body: TruncatedSeries) -> Result<Self> {
        if !body.coeff(0).is_unit() {
            return Err(Error::NonUnit(format!("constant term of {body}")));
        }
        Ok(UnitSeries { body })
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.body
    }

    pub fn into_body(self) -> TruncatedSeries {
        self.body
    }

    pub fn prime(&self) -> u64 {
        self.body.prime()
    }

    /// Teichmüller part ω of the constant term.
    pub fn teichmuller_part(&self) -> Result<PadicInt> {
        self.body.coeff(0).teichmuller_part()
    }

    /// `c_0 / ω`, a 1-unit.
    pub fn one_unit_part(&self) -> Result<PadicInt> {
        self.body.coeff(0).checked_div(&self.teichmuller_part()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(UnitSeries { body: self.body.checked_mul(&other.body)? })
    }

    pub fn invert(&self) -> Result<Self> {
        Ok(UnitSeries { body: self.body.invert_unit()? })
    }
}

impl TryFrom<TruncatedSeries> for UnitSeries {
    type Error = Error;
    fn try_from(body: TruncatedSeries) -> Result<Self> {
        UnitSeries::new(body)
    }
}

impl From<UnitSeries> for TruncatedSeries {
    fn from(u: UnitSeries) -> Self {
        u.body
    }
}

impl fmt::Display for UnitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// `l_p(u)`; output precision is one less than that of `u`.
pub fn rezk_log(u: &UnitSeries) -> Result<TruncatedSeries> {
    let body = &u.body;
    let p = body.prime();
    if body.precision() < 2 {
        return Err(Error::PrecisionExhausted(format!(
            "Rezk's logarithm needs coefficients mod p^2 at least, got {body}"
        )));
    }
    let psi = adams_p(body)?;
    let ratio = psi.checked_mul(&body.pow(p)?.invert_unit()?)?;
    let one = ratio.coeff(0).sibling(1);
    for (i, c) in ratio.coefficients().iter().enumerate() {
        let c = if i == 0 { *c - one } else { *c };
        if c.is_unit() {
            return Err(Error::Internal(format!("ψ_p(u)/u^p is not 1 mod p at x^{i} for u = {body}")));
        }
    }
    Ok(-ratio.log()?.divide_by_p()?)
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Starting working precision; defaults to one digit above the target.
    pub working_precision: Option<u32>,
    /// Widenings by `M` digits before giving up.
    pub max_retries: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { working_precision: None, max_retries: 3 }
    }
}

/// Number of Frobenius hops `i -> p i` inside degrees `2..M`. Each one costs
/// a digit of uniqueness in the solved unit.
pub fn precision_hops(prime: u64, truncation: usize) -> u32 {
    let mut h = 0;
    let mut d = 2 * prime as usize;
    while d < truncation {
        h += 1;
        d *= prime as usize;
    }
    h
}

/// Solve `l_p(u) = target` with `u = ω · (1 - x)^line · u_0`, `u_0 ≡ 1 mod p`
/// having zero `x` coefficient.
pub fn solve_unit(target: &TruncatedSeries, omega: u64, line: &PadicInt) -> Result<UnitSeries> {
    solve_unit_with(target, omega, line, &SolveOptions::default())
}

/// As [`solve_unit`] with an exact integer line exponent.
pub fn solve_unit_int(target: &TruncatedSeries, omega: u64, line: i128) -> Result<UnitSeries> {
    let p = target.prime();
    let guard = crate::arith::factorial_valuation(target.truncation() as u64, p);
    let a = PadicInt::new(p, target.precision() + 2 + guard, line)?;
    solve_unit(target, omega, &a)
}

pub fn solve_unit_with(
    target: &TruncatedSeries,
    omega: u64,
    line: &PadicInt,
    opts: &SolveOptions,
) -> Result<UnitSeries> {
    let p = target.prime();
    let m = target.truncation();
    if omega.is_multiple_of(p) {
        return Err(Error::NonUnit(format!("Teichmüller parameter {omega} mod {p}")));
    }
    if line.prime() != p {
        return Err(Error::PrimeMismatch(p, line.prime()));
    }
    if m >= 2 && !target.coeff(1).is_zero() {
        return Err(Error::NotInImage(format!(
            "the x coefficient of l_p(u) always vanishes, target has {}",
            target.coeff(1)
        )));
    }
    let nt = target.precision();
    let h = precision_hops(p, m);
    if nt <= h {
        return Err(Error::PrecisionExhausted(format!(
            "a target mod p^{nt} determines nothing at truncation {m} ({h} Frobenius hops)"
        )));
    }
    let n_out = nt - h;
    let mut w = opts.working_precision.unwrap_or(nt + 1).max(nt + 1);
    for _ in 0..=opts.max_retries {
        let u0 = match solve_core(target, w) {
            Ok(u0) => u0,
            Err(Error::PrecisionOutOfRange { .. }) => break,
            Err(e) => return Err(e),
        };
        if rezk_log(&u0)?.eq_at_common_precision(target) {
            let teich = PadicInt::teichmuller(omega % p, p, w)?;
            let line_part = TruncatedSeries::binomial_one_minus_pow(line, m)?;
            let body = u0.body.scale(&teich)?.checked_mul(&line_part)?;
            let body = body.reduce_precision(n_out)?.with_top_unknown(target.top_unknown());
            return UnitSeries::new(body);
        }
        w += m as u32;
    }
    Err(Error::PrecisionExhausted(format!("no unit reproduces {target} within the working precision")))
}

/// `u_0 = d_0 · (1 + Σ_{j≥2} e_j x^j)` with every coefficient an exact choice
/// at precision `w`.
fn solve_core(target: &TruncatedSeries, w: u32) -> Result<UnitSeries> {
    let p = target.prime();
    let m = target.truncation();
    let t = target.lift(w)?;
    // l_p(d) = -((1 - p)/p) log d on constants.
    let t0 = *t.coeff(0);
    let z = t0.scale(-(p as i128)).checked_mul(&t0.sibling(1 - p as i128).invert()?)?;
    let d0 = z.exp_padic()?;
    let mut v = TruncatedSeries::one(p, w, m)?;
    for j in 2..m {
        let partial = UnitSeries { body: v.truncate(j + 1)? };
        let lj = *rezk_log(&partial)?.coeff(j);
        let rhs = t.coeff(j).reduce(w - 1)? - lj;
        let slope = rhs.sibling(1) - rhs.sibling(p as i128).pow(j as u64 - 1);
        let e = rhs.checked_div(&slope)?;
        v.set_coeff(j, e.lift(w)?)?;
    }
    UnitSeries::new(v.scale(&d0)?)
}

/// Factor `u = ω · (1 - x)^a · core` with `core ≡ 1 mod p` in the constant
/// term and zero `x` coefficient.
pub fn kernel_check(u: &UnitSeries) -> Result<(u64, PadicInt, UnitSeries)> {
    let body = &u.body;
    let c0 = *body.coeff(0);
    let omega = c0.residue_mod_p();
    let teich = PadicInt::teichmuller(omega, body.prime(), c0.precision())?;
    let a = if body.truncation() >= 2 {
        -body.coeff(1).checked_div(&c0)?
    } else {
        PadicInt::zero(body.prime(), c0.precision())?
    };
    let line_inv = TruncatedSeries::binomial_one_minus_pow(&-a, body.truncation())?;
    let core = body.scale(&teich.invert()?)?.checked_mul(&line_inv)?;
    Ok((omega, a, UnitSeries::new(core)?))
}
