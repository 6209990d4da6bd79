//! From an extension choice to the homotopy of THH: target class, unit `u`,
//! the cokernel of `u - 1` and its torsion rank.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::adams::{self, KClass};
use crate::error::{Error, Result};
use crate::expr::SeriesExpr;
use crate::padic::{self, PadicInt};
use crate::rezk::{precision_hops, solve_unit_int, UnitSeries};
use crate::series::TruncatedSeries;
use crate::snf::{smith_divisors, toeplitz_matrix, triangular_det_valuation};

pub const DEFAULT_PRECISION: u32 = 4;

/// The B-summand component, always present: a class `g` with
/// `π_0(β g)` restricting to `α_p` on `S²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BSummand {
    pub g: SeriesExpr,
    /// Rescale `g` so the restriction condition holds.
    #[serde(default)]
    pub normalize: bool,
}

impl Default for BSummand {
    fn default() -> Self {
        BSummand { g: SeriesExpr::Mul(Box::new(SeriesExpr::Alpha), Box::new(SeriesExpr::X)), normalize: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// `Σ^{2k} B` with data `h = coeff · x`, `2 ≤ k ≤ p - 2`.
    Summand { k: u64, coeff: i64 },
    /// Contributes `(1 - x)^{2a}`.
    LineBundle { a: i64 },
    /// The `Σ² B_2` factor, `h = coeff · x^{p+1} / (p + 1)`; trivial mod `x^p`.
    B2 { coeff: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub prime: u64,
    #[serde(default = "default_precision")]
    pub precision: u32,
    /// Defaults to `2p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default)]
    pub b_summand: BSummand,
    #[serde(default)]
    pub factors: Vec<Factor>,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

impl ExtensionSpec {
    pub fn new(prime: u64) -> Self {
        ExtensionSpec {
            prime,
            precision: DEFAULT_PRECISION,
            truncation: None,
            b_summand: BSummand::default(),
            factors: vec![],
        }
    }

    pub fn with_factor(mut self, f: Factor) -> Self {
        self.factors.push(f);
        self
    }

    /// The worked example at `p = 3`: `g = -α_3 (L - L^{-1}) / 2`.
    pub fn example(name: &str, prime: u64) -> Result<Self> {
        match name {
            "worked" | "paper-5.1" => {
                let g = SeriesExpr::parse("-alpha*(L - L^-1)/2")?;
                Ok(ExtensionSpec { b_summand: BSummand { g, normalize: false }, ..Self::new(prime) })
            }
            _ => Err(Error::InvalidSpec(format!("unknown example {name:?}"))),
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation.unwrap_or(2 * self.prime as usize)
    }

    pub fn validate(&self) -> Result<()> {
        padic::check_prime(self.prime)?;
        let p = self.prime;
        if self.precision < 2 {
            return Err(Error::PrecisionOutOfRange { prime: p, precision: self.precision });
        }
        if self.truncation() < 2 {
            return Err(Error::InvalidSpec("truncation must be at least 2".into()));
        }
        for f in &self.factors {
            match f {
                Factor::Summand { k, .. } if *k < 2 || *k > p - 2 => {
                    return Err(Error::InvalidSpec(format!(
                        "summand index {k} outside 2..={} (k = 1 is the line bundle, k = 0 the B-summand)",
                        p as i64 - 2
                    )))
                }
                Factor::B2 { .. } if self.truncation() as u64 <= p => {
                    return Err(Error::InvalidSpec(format!(
                        "the B_2 factor is trivial mod x^{p}; use truncation above {p}"
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Parameters of the kernel of `l_p` fixed by the spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelParams {
    pub omega: u64,
    pub line: i128,
}

/// The B-summand body `g` evaluated at `(p, N, M)`, normalized or checked.
fn b_summand_body(spec: &ExtensionSpec, precision: u32, truncation: usize) -> Result<TruncatedSeries> {
    let p = spec.prime;
    let g = spec.b_summand.g.eval(p, precision, truncation)?;
    let (_, r) = adams::restrict_to_s2(&adams::projector(0, &KClass::new(1, g.clone()))?)?;
    let alpha = adams::alpha(p, precision)?;
    if spec.b_summand.normalize {
        if !r.is_unit() {
            return Err(Error::InvalidSpec(format!(
                "cannot normalize {}: restriction {r} is not a unit",
                spec.b_summand.g
            )));
        }
        return g.scale(&alpha.checked_div(&r)?);
    }
    if r != alpha {
        return Err(Error::InvalidSpec(format!(
            "B-summand restricts to {r} on S², but the extension needs α_p = {alpha}"
        )));
    }
    Ok(g)
}

/// `π_k(κ(β h))` known mod `x^M`.
fn kappa_target(k: u64, h: TruncatedSeries) -> Result<TruncatedSeries> {
    let kh = adams::kappa(&KClass::new(1, h))?;
    adams::projector(k, &KClass::weight_zero(kh))?.body.known_part()
}

/// Per-factor targets, the B-summand first.
fn factor_targets(spec: &ExtensionSpec, precision: u32, truncation: usize) -> Result<Vec<(TruncatedSeries, i128)>> {
    spec.validate()?;
    let p = spec.prime;
    let m1 = truncation + 1;
    let mut out = vec![(kappa_target(0, b_summand_body(spec, precision, m1)?)?, 0)];
    for f in &spec.factors {
        out.push(match f {
            Factor::Summand { k, coeff } => {
                (kappa_target(*k, TruncatedSeries::from_ints(p, precision, m1, &[0, *coeff as i128])?)?, 0)
            }
            Factor::LineBundle { a } => (TruncatedSeries::zero(p, precision, truncation)?, 2 * *a as i128),
            Factor::B2 { coeff } => {
                let c = PadicInt::new(p, precision, *coeff as i128)?.checked_div(&PadicInt::new(
                    p,
                    precision,
                    p as i128 + 1,
                )?)?;
                let h = TruncatedSeries::monomial(c, p as usize + 1, m1)?;
                (kappa_target(1, h)?, 0)
            }
        });
    }
    Ok(out)
}

/// Target `l_p(u)` and kernel parameters at the spec's truncation, with
/// enough precision that the solved unit is known mod `p^N`.
pub fn build_target(spec: &ExtensionSpec) -> Result<(TruncatedSeries, KernelParams)> {
    let m = spec.truncation();
    build_target_at(spec, spec.precision + precision_hops(spec.prime, m), m)
}

pub fn build_target_at(
    spec: &ExtensionSpec,
    precision: u32,
    truncation: usize,
) -> Result<(TruncatedSeries, KernelParams)> {
    let parts = factor_targets(spec, precision, truncation)?;
    let mut target = TruncatedSeries::zero(spec.prime, precision, truncation)?;
    let mut line = 0;
    for (t, a) in parts {
        target = target.checked_add(&t)?;
        line += a;
    }
    Ok((target, KernelParams { omega: 1, line }))
}

pub fn compute_unit(spec: &ExtensionSpec) -> Result<UnitSeries> {
    unit_at(spec, spec.precision, spec.truncation())
}

/// The product of the per-factor units, known mod `(p^N, x^M)`.
pub fn unit_at(spec: &ExtensionSpec, precision: u32, truncation: usize) -> Result<UnitSeries> {
    let nt = precision + precision_hops(spec.prime, truncation);
    let mut u: Option<UnitSeries> = None;
    for (t, a) in factor_targets(spec, nt, truncation)? {
        let part = solve_unit_int(&t, 1, a)?;
        u = Some(match u {
            None => part,
            Some(acc) => acc.checked_mul(&part)?,
        });
    }
    Ok(u.expect("the B-summand is always present"))
}

/// `v = v_p(c_0 - 1)` and the first unit coefficient index `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub v: u32,
    pub k: usize,
}

impl Profile {
    /// `u = 1 + p·unit + … + unit·x^k`, the shape the torsion count relies on.
    pub fn is_certified(&self) -> bool {
        self.v == 1
    }
}

pub fn normal_form(u: &UnitSeries) -> Result<Profile> {
    let body = u.body();
    let c0 = *body.coeff(0);
    let v = (c0 - c0.sibling(1)).valuation();
    let k = (1..body.truncation())
        .find(|&j| body.coeff(j).is_unit() && !(body.top_unknown() && j == body.truncation() - 1))
        .ok_or_else(|| {
            Error::Indeterminate(format!("no coefficient of u - 1 is a unit mod x^{} for u = {u}", body.truncation()))
        })?;
    Ok(Profile { v, k })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Homotopy {
    pub even: String,
    pub odd: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThhReport {
    pub spec: ExtensionSpec,
    pub unit: UnitSeries,
    pub profile: Profile,
    /// Elementary-divisor exponents keyed by `"M"` and `"2M"`.
    pub divisors: BTreeMap<String, Vec<u32>>,
    pub truncations: BTreeMap<String, usize>,
    pub rank: usize,
    pub homotopy: Homotopy,
    pub notes: Vec<String>,
}

/// One truncation of the rank computation.
#[derive(Clone, Debug)]
pub struct RankRun {
    pub truncation: usize,
    pub precision: u32,
    pub unit: UnitSeries,
    pub profile: Profile,
    pub divisors: Vec<u32>,
    pub det_valuation: u32,
}

/// The divisors of `u - 1` on `M` Bott classes, at precision `M + 1` so
/// every exponent up to `M` is resolved.
pub fn rank_run(spec: &ExtensionSpec, truncation: usize) -> Result<RankRun> {
    let precision = truncation as u32 + 1;
    let unit = unit_at(spec, precision, truncation)?;
    let profile = normal_form(&unit)?;
    let matrix = toeplitz_matrix(unit.body(), truncation)?;
    let divisors = smith_divisors(&matrix, precision)?;
    let det_valuation = triangular_det_valuation(&matrix);
    Ok(RankRun { truncation, precision, unit, profile, divisors, det_valuation })
}

/// Exponents present at `small` that strictly grow at `large`, matching the
/// largest with the largest.
pub fn growing_exponents(small: &[u32], large: &[u32]) -> usize {
    let mut a = small.to_vec();
    let mut b = large.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    a.iter().zip(&b).filter(|(x, y)| **x > 0 && y > x).count()
}

pub fn torsion_rank(spec: &ExtensionSpec) -> Result<ThhReport> {
    spec.validate()?;
    let p = spec.prime;
    let m = spec.truncation();
    let (small, large) = std::thread::scope(|s| {
        let h = s.spawn(|| rank_run(spec, 2 * m));
        let small = rank_run(spec, m);
        (small, h.join().expect("rank computation panicked"))
    });
    let (small, large) = (small?, large?);
    for run in [&small, &large] {
        let total: u32 = run.divisors.iter().sum();
        let expected = run.truncation as u32 * run.profile.v;
        if run.divisors.contains(&run.precision) || total != run.det_valuation || total != expected {
            return Err(Error::Indeterminate(format!(
                "u - 1 is not injective mod x^{}: divisors {:?}, det valuation {} (expected {expected})",
                run.truncation, run.divisors, run.det_valuation
            )));
        }
    }
    let rank = growing_exponents(&small.divisors, &large.divisors);
    let profile = small.profile;
    if !profile.is_certified() || profile.k != rank || large.profile.k != rank {
        return Err(Error::Indeterminate(format!(
            "{rank} growing divisors, but the normal form is {profile:?} at M = {m} and {:?} at M = {}",
            large.profile,
            2 * m
        )));
    }
    if rank < 1 || rank as u64 > p - 1 {
        return Err(Error::Indeterminate(format!("torsion rank {rank} outside 1..={}", p - 1)));
    }
    let mut notes = vec![format!(
        "divisors computed mod p^(M+1) at M = {m} and M = {}; unit shown mod (p^{}, x^{m})",
        2 * m,
        spec.precision
    )];
    if !spec.factors.is_empty() {
        notes.push("several factors: u is the product of the per-factor units".into());
    }
    let unit = compute_unit(spec)?;
    Ok(ThhReport {
        spec: spec.clone(),
        unit,
        profile,
        divisors: BTreeMap::from([("M".into(), small.divisors), ("2M".into(), large.divisors)]),
        truncations: BTreeMap::from([("M".into(), m), ("2M".into(), 2 * m)]),
        rank,
        homotopy: Homotopy { even: format!("(Z/{p}^inf)^{rank}"), odd: "0".into() },
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_target_and_unit() {
        let spec = ExtensionSpec { truncation: Some(3), precision: 2, ..ExtensionSpec::example("worked", 3).unwrap() };
        let (t, params) = build_target(&spec).unwrap();
        let a3 = adams::alpha(3, 2).unwrap();
        let half = PadicInt::new(3, 2, 2).unwrap().invert().unwrap();
        assert_eq!(params, KernelParams { omega: 1, line: 0 });
        // κ gives +α_3 (L + L^{-1}) / 2 = α_3 (1 + x^2/2 + …).
        assert_eq!(*t.coeff(0), a3);
        assert!(t.coeff(1).is_zero());
        assert_eq!(*t.coeff(2), a3 * half);
        let u = compute_unit(&spec).unwrap();
        assert_eq!(*u.body().coeff(0), PadicInt::new(3, 2, 1).unwrap() - a3.scale(3));
    }

    #[test]
    fn b_summand_target_mod_p() {
        for p in [3u64, 5, 7] {
            let spec = ExtensionSpec { truncation: Some(p as usize), ..ExtensionSpec::new(p) };
            let (t, _) = build_target(&spec).unwrap();
            let a1 = t.coeff(0).residue_mod_p();
            for j in 1..p as usize {
                let expect = if j == p as usize - 1 { (p - a1) % p } else { 0 };
                assert_eq!(t.coeff(j).residue_mod_p(), expect, "p={p} j={j}");
            }
            let u = compute_unit(&spec).unwrap();
            assert_eq!(normal_form(&u).unwrap(), Profile { v: 1, k: p as usize - 1 });
        }
    }

    #[test]
    fn restriction_condition_is_enforced() {
        let mut spec = ExtensionSpec::new(5);
        spec.b_summand.g = SeriesExpr::X;
        assert!(matches!(compute_unit(&spec), Err(Error::InvalidSpec(_))));
        spec.b_summand.normalize = true;
        let normalized = compute_unit(&spec).unwrap();
        assert_eq!(normalized, compute_unit(&ExtensionSpec::new(5)).unwrap());
    }

    #[test]
    fn product_of_units_matches_summed_target() {
        let spec = ExtensionSpec::new(7)
            .with_factor(Factor::Summand { k: 3, coeff: 2 })
            .with_factor(Factor::LineBundle { a: 5 })
            .with_factor(Factor::B2 { coeff: 1 });
        let (t, params) = build_target(&spec).unwrap();
        let direct = solve_unit_int(&t, params.omega, params.line).unwrap();
        assert_eq!(compute_unit(&spec).unwrap(), direct);
    }

    #[test]
    fn spec_validation() {
        assert!(ExtensionSpec::new(5).with_factor(Factor::Summand { k: 1, coeff: 1 }).validate().is_err());
        assert!(ExtensionSpec::new(5).with_factor(Factor::Summand { k: 4, coeff: 1 }).validate().is_err());
        let b2 = ExtensionSpec { truncation: Some(5), ..ExtensionSpec::new(5) }.with_factor(Factor::B2 { coeff: 1 });
        assert!(b2.validate().is_err());
        assert!(ExtensionSpec::new(9).validate().is_err());
        let json = serde_json::to_string(&ExtensionSpec::new(5).with_factor(Factor::LineBundle { a: 2 })).unwrap();
        let back: ExtensionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.factors, vec![Factor::LineBundle { a: 2 }]);
        let minimal: ExtensionSpec = serde_json::from_str(r#"{"prime":3}"#).unwrap();
        assert_eq!(minimal, ExtensionSpec::new(3));
    }

    #[test]
    fn normal_form_examples() {
        let u = |p: u64, v: &[i128]| UnitSeries::new(TruncatedSeries::from_ints(p, 3, 4, v).unwrap()).unwrap();
        assert_eq!(normal_form(&u(3, &[4, 0, 1])).unwrap(), Profile { v: 1, k: 2 });
        assert_eq!(normal_form(&u(3, &[4, 1])).unwrap(), Profile { v: 1, k: 1 });
        assert!(matches!(normal_form(&u(3, &[1])), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn ranks_at_three() {
        let r = torsion_rank(&ExtensionSpec::example("worked", 3).unwrap()).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.homotopy.even, "(Z/3^inf)^2");
        assert_eq!(r.divisors["M"], vec![0, 0, 0, 0, 3, 3]);
        assert_eq!(r.divisors["2M"], vec![0; 10].into_iter().chain([6, 6]).collect::<Vec<_>>());
        let line = torsion_rank(&ExtensionSpec::new(3).with_factor(Factor::LineBundle { a: 1 })).unwrap();
        assert_eq!(line.rank, 1);
    }
}
