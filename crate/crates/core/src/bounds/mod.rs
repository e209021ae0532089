//! Closed-form prolongation bounds.
//!
//! Every value is an exact big integer. Exponents are checked against
//! [`MAX_RESULT_BITS`] before any power is formed, so a bound that cannot be
//! materialized is an error rather than a hang or a wrapped value.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// Largest bound, in bits, that will be materialized.
pub const MAX_RESULT_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("degree d must be at least 1, got {0}")]
    DegreeTooSmall(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bound exceeds {MAX_RESULT_BITS} bits")]
    TooLarge,
}

fn check_size(base: &BigUint, exp: u64) -> Result<(), BoundError> {
    if base.is_zero() || base.is_one() || exp == 0 {
        return Ok(());
    }
    let bits = base.bits().checked_mul(exp).ok_or(BoundError::TooLarge)?;
    if bits > MAX_RESULT_BITS + base.bits() {
        return Err(BoundError::TooLarge);
    }
    Ok(())
}

/// `base^exp` with `0^0 = 0`.
fn pow(base: &BigUint, exp: u64) -> Result<BigUint, BoundError> {
    if exp == 0 {
        return Ok(if base.is_zero() { BigUint::zero() } else { BigUint::one() });
    }
    check_size(base, exp)?;
    let exp32 = u32::try_from(exp).map_err(|_| BoundError::TooLarge)?;
    Ok(base.pow(exp32))
}

fn pow_u(base: u64, exp: u64) -> Result<BigUint, BoundError> {
    pow(&BigUint::from(base), exp)
}

/// `2^k` as a checked machine integer.
fn two_pow(k: u64) -> Result<u64, BoundError> {
    if k >= 63 {
        return Err(BoundError::TooLarge);
    }
    Ok(1u64 << k)
}

/// `B(m, D) = sum_{i=0}^{m} D^(2(2^i - 1))`.
pub fn bound_b(m: u64, d: &BigUint) -> Result<BigUint, BoundError> {
    let mut acc = BigUint::zero();
    for i in 0..=m {
        let e = 2 * (two_pow(i)? - 1);
        acc += pow(d, e)?;
    }
    Ok(acc)
}

/// Radical bound `sum_{0 <= i <= j <= m} D_j^(2(2^i - 1))` for the profile `D_0..D_m`.
pub fn bound_radical(profile: &[u64]) -> Result<BigUint, BoundError> {
    let mut acc = BigUint::zero();
    for (j, &dj) in profile.iter().enumerate() {
        acc += bound_b(j as u64, &BigUint::from(dj))?;
    }
    Ok(acc)
}

fn exponent(span: u64, m: u64) -> Result<u64, BoundError> {
    // (span - m + 1) * 2^(m+1)
    (span - m + 1)
        .checked_mul(two_pow(m + 1)?)
        .ok_or(BoundError::TooLarge)
}

/// General bound `d^((|alpha| - m + 1) 2^(m+1))`, or `m + 1` when `d = 1`.
pub fn bound_general(d: u64, abs_alpha: u64, m: u64) -> Result<BigUint, BoundError> {
    if d < 1 {
        return Err(BoundError::DegreeTooSmall(d));
    }
    if m > abs_alpha {
        return Err(BoundError::Precondition(format!("m = {m} exceeds |alpha| = {abs_alpha}")));
    }
    if d == 1 {
        return Ok(BigUint::from(m + 1));
    }
    pow_u(d, exponent(abs_alpha, m)?)
}

/// Full-elimination bound `d^((|alpha| + |beta| - m + 1) 2^(m+1))`, or `m + 1` when `d = 1`.
pub fn bound_full(d: u64, abs_alpha: u64, abs_beta: u64, m: u64) -> Result<BigUint, BoundError> {
    bound_general(d, abs_alpha + abs_beta, m)
}

/// Noether exponent estimate `d0 * d^(min(r, |alpha|) - 1)`.
pub fn noether_bound(d0: u64, d: u64, r: u64, abs_alpha: u64) -> Result<BigUint, BoundError> {
    if d0 > d || r < 1 || abs_alpha < 1 {
        return Err(BoundError::Precondition(format!(
            "need d0 <= d, r >= 1, |alpha| >= 1 (d0 = {d0}, d = {d}, r = {r}, |alpha| = {abs_alpha})"
        )));
    }
    Ok(BigUint::from(d0) * pow_u(d, r.min(abs_alpha) - 1)?)
}

/// Degree estimate `d0 * d^(|alpha| - i - 1)` for the `i`-dimensional component.
pub fn component_degree_bound(d0: u64, d: u64, abs_alpha: u64, i: u64) -> Result<BigUint, BoundError> {
    if i + 1 > abs_alpha {
        return Err(BoundError::Precondition(format!(
            "component dimension {i} out of range for |alpha| = {abs_alpha}"
        )));
    }
    Ok(BigUint::from(d0) * pow_u(d, abs_alpha - i - 1)?)
}

/// `d0 d^(min(|alpha|, r) - 1) * sum_{i=0}^{m} B(i, d0 d^(|alpha| - i - 1))`.
pub fn bound_tighter(d0: u64, d: u64, r: u64, abs_alpha: u64, m: u64) -> Result<BigUint, BoundError> {
    if m + 1 > abs_alpha {
        return Err(BoundError::Precondition(format!("m = {m} must be below |alpha| = {abs_alpha}")));
    }
    let mu = noether_bound(d0, d, r, abs_alpha)?;
    let mut sum = BigUint::zero();
    for i in 0..=m {
        sum += bound_b(i, &component_degree_bound(d0, d, abs_alpha, i)?)?;
    }
    Ok(mu * sum)
}

/// `mu * sum_i B(i, D_i)`.
pub fn bound_prop_any(mu: &BigUint, profile: &[BigUint]) -> Result<BigUint, BoundError> {
    if mu.is_zero() {
        return Err(BoundError::Precondition("mu must be at least 1".into()));
    }
    let mut sum = BigUint::zero();
    for (i, di) in profile.iter().enumerate() {
        sum += bound_b(i as u64, di)?;
    }
    Ok(mu * sum)
}

/// Depth `d(d+3)/2` reached by the lower-bound witness family.
pub fn lower_bound_order(d: u64) -> Result<u64, BoundError> {
    if d < 1 {
        return Err(BoundError::DegreeTooSmall(d));
    }
    Ok(d * (d + 3) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// General bound in the eliminated unknowns.
    T1,
    /// Radical bound from the component degree profile.
    T2,
    /// Full-elimination bound in all unknowns.
    T3,
    /// Noether exponent times the profile bound.
    PropAny,
    /// The sharpened general bound.
    Tighter,
}

/// How the pipeline picks a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TheoremChoice {
    #[default]
    Auto,
    T1,
    T2,
    T3,
    Tighter,
}

/// Everything the bound formulas consume.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    /// Maximal degree of an equation in the eliminated variables.
    pub d: u64,
    /// Minimal such degree.
    pub d0: u64,
    pub abs_alpha: u64,
    pub abs_beta: u64,
    /// Dimension over the field generated by the kept unknowns.
    pub m: u64,
    /// Number of equations.
    pub r: u64,
    /// Degree of the top-dimensional part, with multiplicity.
    pub top_degree: u64,
    pub radical: bool,
    pub equidimensional: bool,
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_big_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub inputs: BoundInputs,
    /// Codimension `|alpha| - m`.
    pub codim: u64,
    /// Degrees `D_0..D_m` used by the profile formulas.
    #[serde(serialize_with = "ser_big_vec")]
    pub profile: Vec<BigUint>,
    #[serde(serialize_with = "ser_big_opt")]
    pub mu: Option<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub b: BigUint,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// The bound as a machine integer, if it fits.
    pub fn b_u32(&self) -> Option<u32> {
        u32::try_from(&self.b).ok()
    }
}

fn report(theorem: Theorem, inputs: &BoundInputs, profile: Vec<BigUint>, mu: Option<BigUint>, b: BigUint) -> BoundReport {
    BoundReport {
        theorem,
        inputs: inputs.clone(),
        codim: inputs.abs_alpha.saturating_sub(inputs.m),
        profile,
        mu,
        b,
        notes: Vec::new(),
    }
}

/// Profile `(0, ..., 0, D_m)` for an equidimensional ideal.
fn top_profile(inputs: &BoundInputs) -> Vec<BigUint> {
    let mut p = vec![BigUint::zero(); inputs.m as usize];
    p.push(BigUint::from(inputs.top_degree));
    p
}

/// Profile with estimated lower-dimensional degrees and the computed top degree.
fn estimated_profile(inputs: &BoundInputs) -> Result<Vec<BigUint>, BoundError> {
    let mut p = Vec::with_capacity(inputs.m as usize + 1);
    for i in 0..inputs.m {
        p.push(component_degree_bound(inputs.d0, inputs.d, inputs.abs_alpha, i)?);
    }
    p.push(BigUint::from(inputs.top_degree));
    Ok(p)
}

fn prop_any(inputs: &BoundInputs) -> Result<BoundReport, BoundError> {
    let mu = if inputs.radical {
        BigUint::one()
    } else {
        noether_bound(inputs.d0, inputs.d, inputs.r.max(1), inputs.abs_alpha.max(1))?
    };
    let profile = estimated_profile(inputs)?;
    let b = bound_prop_any(&mu, &profile)?;
    let mut rep = report(Theorem::PropAny, inputs, profile, Some(mu), b);
    if !inputs.radical {
        rep.notes.push("mu from the Noether exponent estimate".into());
    }
    if inputs.m > 0 {
        rep.notes
            .push("lower-dimensional degrees replaced by their a priori estimates".into());
    }
    Ok(rep)
}

fn tighter(inputs: &BoundInputs) -> Result<BoundReport, BoundError> {
    let b = bound_tighter(inputs.d0, inputs.d, inputs.r.max(1), inputs.abs_alpha, inputs.m)?;
    let mu = noether_bound(inputs.d0, inputs.d, inputs.r.max(1), inputs.abs_alpha)?;
    let profile = (0..=inputs.m)
        .map(|i| component_degree_bound(inputs.d0, inputs.d, inputs.abs_alpha, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report(Theorem::Tighter, inputs, profile, Some(mu), b))
}

/// Applies the requested theorem, or under `Auto` the smallest proven bound:
/// the radical bound when the ideal is radical and equidimensional, otherwise
/// the smaller of the Noether-exponent bound and the sharpened general bound.
pub fn select_bound(inputs: &BoundInputs, choice: TheoremChoice) -> Result<BoundReport, BoundError> {
    if inputs.d < 1 {
        return Err(BoundError::DegreeTooSmall(inputs.d));
    }
    let mut rep = match choice {
        TheoremChoice::T1 => {
            let b = bound_general(inputs.d, inputs.abs_alpha, inputs.m)?;
            report(Theorem::T1, inputs, Vec::new(), None, b)
        }
        TheoremChoice::T3 => {
            let b = bound_full(inputs.d, inputs.abs_alpha, inputs.abs_beta, inputs.m)?;
            let mut r = report(Theorem::T3, inputs, Vec::new(), None, b);
            r.notes.push(
                "relations are searched in the elimination ideal, not its radical".into(),
            );
            r
        }
        TheoremChoice::T2 => {
            let profile = top_profile(inputs);
            let small: Vec<u64> = profile.iter().map(|b| u64::try_from(b).expect("u64 degree")).collect();
            let b = bound_radical(&small)?;
            let mut r = report(Theorem::T2, inputs, profile, Some(BigUint::one()), b);
            if !inputs.radical {
                r.notes.push("radicality not established; bound assumes it".into());
            }
            if !inputs.equidimensional {
                r.notes.push("equidimensionality not established; bound assumes it".into());
            }
            r
        }
        TheoremChoice::Tighter => tighter(inputs)?,
        TheoremChoice::Auto => {
            if inputs.radical && inputs.equidimensional {
                return select_bound(inputs, TheoremChoice::T2).map(|mut r| {
                    r.notes.push("degree surrogate: Hilbert multiplicity of the top component".into());
                    r
                });
            }
            let any = prop_any(inputs)?;
            if inputs.m < inputs.abs_alpha {
                let t = tighter(inputs)?;
                if t.b < any.b {
                    t
                } else {
                    any
                }
            } else {
                any
            }
        }
    };
    if choice != TheoremChoice::T2 && choice != TheoremChoice::Auto {
        rep.notes.push(format!("codimension |alpha| - m = {}", rep.codim));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn b_examples() {
        for d in 1..6 {
            assert_eq!(bound_b(0, &big(d)).unwrap(), big(1));
            assert_eq!(bound_b(1, &big(d)).unwrap(), big(d * d + 1));
        }
        assert_eq!(bound_b(2, &big(1)).unwrap(), big(3));
        assert_eq!(bound_b(0, &big(0)).unwrap(), big(0));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(bound_radical(&[0, 2]).unwrap(), big(5));
        assert_eq!(bound_radical(&[0, 0, 1]).unwrap(), big(3));
        assert_eq!(bound_radical(&[2]).unwrap(), big(1));
    }

    #[test]
    fn general_examples() {
        assert_eq!(bound_general(1, 5, 3).unwrap(), big(4));
        assert_eq!(bound_general(2, 2, 0).unwrap(), big(64));
        assert_eq!(bound_general(2, 3, 1).unwrap(), big(4096));
        assert_eq!(bound_general(0, 3, 1), Err(BoundError::DegreeTooSmall(0)));
        assert_eq!(bound_full(1, 2, 3, 0).unwrap(), big(1));
        assert_eq!(bound_full(2, 1, 1, 0).unwrap(), big(64));
        assert_eq!(bound_full(3, 2, 0, 1).unwrap(), big(6561));
    }

    #[test]
    fn auxiliary_examples() {
        assert_eq!(noether_bound(1, 1, 4, 4).unwrap(), big(1));
        assert_eq!(noether_bound(2, 3, 5, 2).unwrap(), big(6));
        assert_eq!(noether_bound(1, 2, 1, 4).unwrap(), big(1));
        assert!(noether_bound(3, 2, 1, 1).is_err());
        assert_eq!(component_degree_bound(2, 2, 2, 1).unwrap(), big(2));
        assert_eq!(component_degree_bound(1, 7, 3, 2).unwrap(), big(1));
        assert_eq!(component_degree_bound(2, 3, 4, 0).unwrap(), big(54));
        assert!(component_degree_bound(2, 3, 4, 4).is_err());
        // d0 = d = 1 leaves sum_{i<=m} B(i, 1) = sum_{i<=m} (i + 1)
        assert_eq!(bound_tighter(1, 1, 3, 5, 3).unwrap(), big(10));
        assert_eq!(bound_tighter(1, 1, 3, 5, 0).unwrap(), big(1));
        assert_eq!(bound_tighter(2, 2, 3, 2, 0).unwrap(), big(4));
        assert_eq!(bound_prop_any(&big(1), &[big(0), big(2)]).unwrap(), big(5));
        assert_eq!(bound_prop_any(&big(3), &[big(1)]).unwrap(), big(3));
        assert_eq!(bound_prop_any(&big(2), &[big(1), big(2)]).unwrap(), big(12));
        assert!(bound_prop_any(&big(0), &[big(1)]).is_err());
        assert_eq!(lower_bound_order(1).unwrap(), 2);
        assert_eq!(lower_bound_order(2).unwrap(), 5);
        assert_eq!(lower_bound_order(3).unwrap(), 9);
    }

    #[test]
    fn oversized_bounds_are_errors() {
        assert_eq!(bound_general(3, 40, 30), Err(BoundError::TooLarge));
        assert_eq!(bound_b(70, &big(2)), Err(BoundError::TooLarge));
    }

    fn inputs(m: u64, top: u64, radical: bool, equi: bool) -> BoundInputs {
        BoundInputs {
            d: 2,
            d0: 1,
            abs_alpha: 3,
            abs_beta: 1,
            m,
            r: 3,
            top_degree: top,
            radical,
            equidimensional: equi,
        }
    }

    #[test]
    fn selection_policy() {
        let r = select_bound(&inputs(1, 2, true, true), TheoremChoice::Auto).unwrap();
        assert_eq!(r.theorem, Theorem::T2);
        assert_eq!(r.b, big(5));
        assert_eq!(r.profile, vec![big(0), big(2)]);

        let r = select_bound(&inputs(1, 2, false, true), TheoremChoice::Auto).unwrap();
        assert!(matches!(r.theorem, Theorem::PropAny | Theorem::Tighter));
        let any = prop_any(&inputs(1, 2, false, true)).unwrap().b;
        let t = tighter(&inputs(1, 2, false, true)).unwrap().b;
        assert_eq!(r.b, any.min(t));

        let r = select_bound(&inputs(0, 2, false, false), TheoremChoice::T1).unwrap();
        assert_eq!(r.b, big(2u64.pow(8)));
    }

    #[test]
    fn grid_identities() {
        for m in 0..=4u64 {
            for dd in 0..=20u64 {
                let profile: Vec<u64> = (0..=m).map(|j| (dd + j) % 21).collect();
                let direct: BigUint = profile
                    .iter()
                    .enumerate()
                    .map(|(j, &dj)| bound_b(j as u64, &big(dj)).unwrap())
                    .sum();
                assert_eq!(bound_radical(&profile).unwrap(), direct);
            }
        }
        for alpha in 1..=6u64 {
            for m in 0..alpha {
                assert_eq!(bound_general(1, alpha, m).unwrap(), big(m + 1));
                for d in 2..=5u64 {
                    for d0 in 1..=d {
                        for r in 1..=6u64 {
                            assert!(bound_tighter(d0, d, r, alpha, m).unwrap() <= bound_general(d, alpha, m).unwrap());
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn monotone(m in 0u64..4, d in 0u64..15, alpha in 1u64..6, d0 in 1u64..4, r in 1u64..5) {
            prop_assert!(bound_b(m, &big(d)).unwrap() <= bound_b(m + 1, &big(d)).unwrap());
            prop_assert!(bound_b(m, &big(d)).unwrap() <= bound_b(m, &big(d + 1)).unwrap());
            let dd = d.max(d0).max(1);
            let mm = m.min(alpha - 1);
            let t = bound_tighter(d0, dd, r, alpha, mm).unwrap();
            prop_assert!(t <= bound_tighter(d0, dd + 1, r, alpha, mm).unwrap());
            prop_assert!(t <= bound_tighter(d0, dd, r + 1, alpha, mm).unwrap());
            prop_assert!(t <= bound_tighter(d0, dd, r, alpha + 1, mm).unwrap());
            if mm + 1 < alpha {
                prop_assert!(t <= bound_tighter(d0, dd, r, alpha, mm + 1).unwrap());
            }
            if d0 < dd {
                prop_assert!(t <= bound_tighter(d0 + 1, dd, r, alpha, mm).unwrap());
            }
            let g = bound_general(dd, alpha, mm).unwrap();
            prop_assert!(g <= bound_general(dd + 1, alpha, mm).unwrap());
            prop_assert!(g <= bound_general(dd, alpha + 1, mm).unwrap());
        }
    }
}
