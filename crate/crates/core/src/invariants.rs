//! Genus sequences and asymptotic invariants of a tower.
//!
//! Exact quantities use big integers and big rationals; only the deficiency and
//! the diophantine search are floating point.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::correspondence::Correspondence;
use crate::graph::ComponentCensus;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("Delta_{0} is required but was not supplied")]
    MissingDeltas(usize),
    #[error("no value for r = {0}, which divides a requested level")]
    MissingDivisorValue(u32),
    #[error("deficiency {0} is negative")]
    NegativeDeficiency(f64),
    #[error("more than one positive parameter: {0:?}")]
    MultiplePositiveParameters(Vec<u32>),
    #[error("no exponent up to {0} works")]
    SearchBoundExceeded(u64),
    #[error("zero value has no argument")]
    ZeroValue,
}

/// `gamma2` is the arithmetic genus of the correspondence, `g1` the genus of the
/// base curve, and `deltas[k]` the singularity measure `Delta_{k+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusInputs {
    pub gamma2: BigInt,
    pub g1: BigInt,
    pub d: u32,
    pub deltas: Vec<BigInt>,
}

impl GenusInputs {
    pub fn new(gamma2: i64, g1: i64, d: u32, deltas: &[i64]) -> Self {
        GenusInputs {
            gamma2: gamma2.into(),
            g1: g1.into(),
            d,
            deltas: deltas.iter().map(|&x| x.into()).collect(),
        }
    }

    fn d(&self) -> BigInt {
        BigInt::from(self.d)
    }

    /// `(gamma2 - 1) - d (g1 - 1)`, the correction term of the recursion.
    pub fn kappa(&self) -> BigInt {
        (&self.gamma2 - 1) - self.d() * (&self.g1 - 1)
    }

    fn delta(&self, i: usize) -> Result<&BigInt, InvariantError> {
        self.deltas.get(i - 2).ok_or(InvariantError::MissingDeltas(i))
    }
}

/// `gamma_n^# = 1 + d (g_{n-1} - 1) + d^(n-2) kappa`, for `n >= 2`.
pub fn sharp_genus(inputs: &GenusInputs, g_prev: &BigInt, n: usize) -> BigInt {
    assert!(n >= 2, "sharp genus is defined from n = 2 on");
    let d = inputs.d();
    BigInt::one() + &d * (g_prev - 1) + Pow::pow(&d, n - 2) * inputs.kappa()
}

/// Closed form `g_n - 1 = (n-1) d^(n-2) kappa + d^(n-1) (g1 - 1) - sum_{i=2}^n d^(n-i) Delta_i`.
pub fn geometric_genus(inputs: &GenusInputs, n: usize) -> Result<BigInt, InvariantError> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(inputs.g1.clone());
    }
    let d = inputs.d();
    let mut acc = BigInt::from(n - 1) * Pow::pow(&d, n - 2) * inputs.kappa()
        + Pow::pow(&d, n - 1) * (&inputs.g1 - 1);
    for i in 2..=n {
        acc -= Pow::pow(&d, n - i) * inputs.delta(i)?;
    }
    Ok(acc + 1)
}

/// `g_n = gamma_n^# - Delta_n`, unrolled from `g_1`.
pub fn geometric_genus_recursive(inputs: &GenusInputs, n: usize) -> Result<BigInt, InvariantError> {
    let mut g = inputs.g1.clone();
    for k in 2..=n {
        g = sharp_genus(inputs, &g, k) - inputs.delta(k)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusRow {
    pub n: usize,
    /// Absent for `n = 1`.
    pub gamma_sharp: Option<String>,
    pub g: String,
}

/// Rows `1..=n_max`, stopping early when the deltas run out.
pub fn genus_table(inputs: &GenusInputs, n_max: usize) -> Vec<GenusRow> {
    let mut rows = Vec::new();
    let mut g = inputs.g1.clone();
    for n in 1..=n_max {
        if n == 1 {
            rows.push(GenusRow {
                n,
                gamma_sharp: None,
                g: g.to_string(),
            });
            continue;
        }
        let Ok(delta) = inputs.delta(n) else { break };
        let sharp = sharp_genus(inputs, &g, n);
        g = &sharp - delta;
        rows.push(GenusRow {
            n,
            gamma_sharp: Some(sharp.to_string()),
            g: g.to_string(),
        });
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NToB,
    BToN,
}

fn divisors(r: u32) -> impl Iterator<Item = u32> {
    (1..=r).filter(move |e| r % e == 0)
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Converts between `N_r = sum_{e | r} e B_e` and the counts `B_r`, for `r <= r_max`.
pub fn nb_convert(
    values: &BTreeMap<u32, BigRational>,
    direction: Direction,
    r_max: u32,
) -> Result<BTreeMap<u32, BigRational>, InvariantError> {
    let mut out = BTreeMap::new();
    for r in 1..=r_max {
        let mut acc = BigRational::zero();
        for e in divisors(r) {
            let v = values.get(&e).ok_or(InvariantError::MissingDivisorValue(e))?;
            match direction {
                Direction::BToN => acc += v * BigRational::from_integer(e.into()),
                Direction::NToB => acc += v * BigRational::from_integer(mobius(r / e).into()),
            }
        }
        if direction == Direction::NToB {
            acc /= BigRational::from_integer(r.into());
        }
        out.insert(r, acc);
    }
    Ok(out)
}

/// `lambda_r` and `beta_r` for `r <= r_max`, together with the limit
/// `ell = lim d^n / g_n` they were derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub lambda: BTreeMap<u32, BigRational>,
    pub beta: BTreeMap<u32, BigRational>,
    pub ell: BigRational,
}

impl InvariantReport {
    /// `lambda_r = sum_{e | r} e beta_e` at every reported level.
    pub fn is_consistent(&self) -> bool {
        self.lambda.iter().all(|(&r, l)| {
            let s: BigRational = divisors(r)
                .map(|e| &self.beta[&e] * BigRational::from_integer(e.into()))
                .sum();
            &s == l
        })
    }
}

/// With a regular core of `core_size` points first appearing at level `r0`,
/// `lambda_s = core_size * ell` when `r0 | s` and `beta_{r0} = core_size * ell / r0`.
pub fn lambda_beta_from_core(
    core_size: u64,
    r0: u32,
    ell: &BigRational,
    r_max: u32,
) -> InvariantReport {
    let total = BigRational::from_integer(core_size.into()) * ell;
    let mut lambda = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for s in 1..=r_max {
        lambda.insert(
            s,
            if s % r0 == 0 {
                total.clone()
            } else {
                BigRational::zero()
            },
        );
        beta.insert(
            s,
            if s == r0 {
                &total / BigRational::from_integer(r0.into())
            } else {
                BigRational::zero()
            },
        );
    }
    InvariantReport {
        lambda,
        beta,
        ell: ell.clone(),
    }
}

/// `1 - sum_r r beta_r / (sqrt(q^r) - 1)`.
pub fn deficiency(beta: &BTreeMap<u32, BigRational>, q: u64) -> Result<f64, InvariantError> {
    assert!(q >= 2);
    let mut sum = 0.0f64;
    for (&r, b) in beta {
        if b.is_zero() {
            continue;
        }
        let weight = r as f64 * b.to_f64().expect("finite rational");
        sum += weight / ((q as f64).powi(r as i32).sqrt() - 1.0);
    }
    let delta = 1.0 - sum;
    if delta < 0.0 {
        return Err(InvariantError::NegativeDeficiency(delta));
    }
    Ok(delta)
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `(1-T)^(-beta)`, or `1` when `beta = 0`.
pub fn zeta_single_parameter(_r0: u32, beta: &BigRational) -> String {
    if beta.is_zero() {
        "1".to_string()
    } else {
        format!("(1-T)^(-{})", format_rational(beta))
    }
}

/// The zeta display for a family of `beta_r` with at most one positive entry.
pub fn zeta_from_betas(beta: &BTreeMap<u32, BigRational>) -> Result<String, InvariantError> {
    let positive: Vec<u32> = beta
        .iter()
        .filter(|(_, b)| b.is_positive())
        .map(|(&r, _)| r)
        .collect();
    match positive.as_slice() {
        [] => Ok("1".to_string()),
        [r] => Ok(zeta_single_parameter(*r, &beta[r])),
        _ => Err(InvariantError::MultiplePositiveParameters(positive)),
    }
}

/// Number of fixed points of the `n`-th iterate on `P^1`, counted with
/// multiplicity: `2 d^n`.
pub fn cycle_count_upper_bound(d: u32, n: u32) -> BigUint {
    BigUint::from(2u32) * Pow::pow(BigUint::from(d), n)
}

pub const DIOPHANTINE_DEFAULT_BOUND: u64 = 1_000_000;

/// Smallest `N >= 1` with `Re(z^N) > 0` for every `z = re + i im` given.
pub fn diophantine_power(values: &[(f64, f64)], bound: u64) -> Result<u64, InvariantError> {
    let mut angles = Vec::with_capacity(values.len());
    for &(re, im) in values {
        if re == 0.0 && im == 0.0 {
            return Err(InvariantError::ZeroValue);
        }
        angles.push(im.atan2(re));
    }
    (1..=bound)
        .find(|&n| angles.iter().all(|&t| (n as f64 * t).cos() > 1e-9))
        .ok_or(InvariantError::SearchBoundExceeded(bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingOrEtale {
    MustBeSingular,
    EtaleCandidate,
    NotGood,
}

/// On the projective line a good tower cannot have both projections étale, so the
/// curves must eventually be singular as soon as ramification exists. It always
/// does for `d >= 2`: an étale cover of `P^1` of degree at least 2 does not exist.
pub fn sing_or_etale_flag(census: &ComponentCensus, corr: &Correspondence) -> SingOrEtale {
    let (d1, d2) = corr.bidegree();
    if !census.singular_vertices.is_empty() || d1.min(d2) >= 2 {
        SingOrEtale::MustBeSingular
    } else {
        SingOrEtale::NotGood
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn genus_examples() {
        let f5 = GenusInputs::new(1, 0, 2, &[0, 0]);
        assert_eq!(sharp_genus(&f5, &f5.g1, 2), BigInt::from(1));
        assert_eq!(sharp_genus(&f5, &BigInt::from(1), 3), BigInt::from(5));
        assert_eq!(geometric_genus(&f5, 3).unwrap(), BigInt::from(5));
        assert_eq!(geometric_genus(&f5, 1).unwrap(), BigInt::from(0));
        assert_eq!(
            geometric_genus(&f5, 4).unwrap_err(),
            InvariantError::MissingDeltas(4)
        );
        // sharp genus at n = 2 is gamma2 itself
        let bgs = GenusInputs::new(4, 0, 3, &[]);
        assert_eq!(sharp_genus(&bgs, &bgs.g1, 2), BigInt::from(4));
    }

    #[test]
    fn genus_table_stops_without_deltas() {
        let rows = genus_table(&GenusInputs::new(1, 0, 2, &[0]), 5);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].gamma_sharp.as_deref(), Some("1"));
    }

    #[test]
    fn place_counts() {
        let n: BTreeMap<u32, BigRational> = [(1, q(6, 1)), (2, q(26, 1))].into();
        let b = nb_convert(&n, Direction::NToB, 2).unwrap();
        assert_eq!(b[&2], q(10, 1));
        assert_eq!(nb_convert(&b, Direction::BToN, 2).unwrap(), n);
        let b2: BTreeMap<u32, BigRational> = [(1, q(0, 1)), (2, q(7, 1))].into();
        assert_eq!(nb_convert(&b2, Direction::BToN, 2).unwrap()[&2], q(14, 1));
        assert_eq!(
            nb_convert(&b2, Direction::BToN, 3).unwrap_err(),
            InvariantError::MissingDivisorValue(3)
        );
    }

    #[test]
    fn core_invariants() {
        let rep = lambda_beta_from_core(12, 3, &q(4, 15), 6);
        assert_eq!(rep.lambda[&3], q(16, 5));
        assert_eq!(rep.lambda[&6], q(16, 5));
        assert_eq!(rep.lambda[&2], q(0, 1));
        assert_eq!(rep.beta[&3], q(16, 15));
        assert!(rep.is_consistent());
        assert_eq!(zeta_from_betas(&rep.beta).unwrap(), "(1-T)^(-16/15)");

        let unit = lambda_beta_from_core(1, 1, &q(1, 1), 4);
        assert!(unit.lambda.values().all(|l| l == &q(1, 1)));
        assert!(unit.is_consistent());

        let zero = lambda_beta_from_core(12, 3, &q(0, 1), 4);
        assert!(zero.beta.values().all(Zero::is_zero));
        assert_eq!(deficiency(&zero.beta, 3).unwrap(), 1.0);
    }

    #[test]
    fn zeta_strings() {
        assert_eq!(zeta_single_parameter(1, &q(1, 1)), "(1-T)^(-1)");
        assert_eq!(zeta_single_parameter(2, &q(0, 1)), "1");
        let two: BTreeMap<u32, BigRational> = [(1, q(1, 1)), (2, q(1, 2))].into();
        assert_eq!(
            zeta_from_betas(&two).unwrap_err(),
            InvariantError::MultiplePositiveParameters(vec![1, 2])
        );
    }

    #[test]
    fn optimal_tower_has_zero_deficiency() {
        // beta_1 = sqrt(q) - 1 for a square q
        let beta: BTreeMap<u32, BigRational> = [(1, q(2, 1))].into();
        assert!(deficiency(&beta, 9).unwrap().abs() < 1e-12);
        let too_big: BTreeMap<u32, BigRational> = [(1, q(3, 1))].into();
        assert!(matches!(
            deficiency(&too_big, 9),
            Err(InvariantError::NegativeDeficiency(_))
        ));
    }

    #[test]
    fn bounds_and_powers() {
        assert_eq!(cycle_count_upper_bound(2, 3), BigUint::from(16u32));
        assert_eq!(cycle_count_upper_bound(3, 1), BigUint::from(6u32));
        assert_eq!(diophantine_power(&[(-1.0, 0.0)], 10).unwrap(), 2);
        assert_eq!(diophantine_power(&[(0.0, 1.0)], 10).unwrap(), 4);
        assert_eq!(
            diophantine_power(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0)], 10).unwrap(),
            4
        );
        assert_eq!(
            diophantine_power(&[(0.0, 1.0)], 3).unwrap_err(),
            InvariantError::SearchBoundExceeded(3)
        );
        assert_eq!(
            diophantine_power(&[(0.0, 0.0)], 3).unwrap_err(),
            InvariantError::ZeroValue
        );
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
