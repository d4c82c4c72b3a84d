//! Degree ratios of group correspondences and ranks of fixed fields.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exponent_vector, format_rational, is_prime_u64, rational_pow, Rational};
use crate::error::{Error, Result};
use crate::groups::{Rank, RankMethod, RankReport, RankWitness};

/// Degrees of the two finite dominant projections of a correspondence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceDegrees {
    pub deg_pi: u64,
    pub deg_rho: u64,
}

fn require_positive(x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive(format_rational(x)))
    }
}

/// deg ρ / deg π.
pub fn degree_ratio(d: CorrespondenceDegrees) -> Result<Rational> {
    if d.deg_pi == 0 || d.deg_rho == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    Ok(Rational::new(d.deg_rho.into(), d.deg_pi.into()))
}

/// Ratio of a product or composite of correspondences.
pub fn combine(r: &Rational, s: &Rational) -> Result<Rational> {
    require_positive(r)?;
    require_positive(s)?;
    Ok(r * s)
}

/// Whether x^m = y^n, the constraint linking the ratios of σ and τ on a
/// common subgroup.
pub fn subgroup_constraint(x: &Rational, m: u32, y: &Rational, n: u32) -> Result<bool> {
    require_positive(x)?;
    require_positive(y)?;
    if m == 0 || n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    // compare exponent vectors rather than forming large powers
    let ex = exponent_vector(x)?;
    let ey = exponent_vector(y)?;
    if ex.keys().ne(ey.keys()) {
        return Ok(false);
    }
    Ok(ex.iter().zip(ey.iter()).all(|((_, a), (_, b))| a * i64::from(m) == b * i64::from(n)))
}

/// The largest S with x0^(1/S) rational: the gcd of the prime exponents.
pub fn rationality_exponent(x0: &Rational) -> Result<u64> {
    require_positive(x0)?;
    if x0.is_one() {
        return Err(Error::RatioOne);
    }
    let ev = exponent_vector(x0)?;
    Ok(ev.values().fold(0i64, |g, e| g.gcd(e)).unsigned_abs())
}

/// The rank bound S for ratio x0, or `None` when x0 = 1.
pub fn rank_bound_from_ratio(x0: &Rational) -> Result<Option<u64>> {
    require_positive(x0)?;
    if x0.is_one() {
        return Ok(None);
    }
    rationality_exponent(x0).map(Some)
}

/// A fixed field query: the fixed field of σ_{q0} ∘ Φ^(-m) in the given
/// characteristic (0 or a prime).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedFieldQuery {
    pub q0: Rational,
    pub m: i64,
    pub characteristic: u64,
}

impl FixedFieldQuery {
    pub fn new(q0: Rational, m: i64, characteristic: u64) -> Result<Self> {
        if q0.is_zero() {
            return Err(Error::ZeroIndex);
        }
        if characteristic != 0 && !is_prime_u64(characteristic) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(FixedFieldQuery { q0, m, characteristic })
    }
}

/// Rank |m| for σ_{q0}(x) = Φ^m(x) in characteristic p > 0; undefined for
/// m = 0, the fixed field of σ_{q0} itself.
pub fn fixed_field_rank(q: &FixedFieldQuery) -> Result<RankReport> {
    let q = FixedFieldQuery::new(q.q0.clone(), q.m, q.characteristic)?;
    let rank = if q.m == 0 {
        Rank::Undefined
    } else if q.characteristic == 0 {
        return Err(Error::FrobeniusInCharZero);
    } else {
        Rank::Finite(q.m.unsigned_abs())
    };
    Ok(RankReport {
        rank,
        method: RankMethod::FixedFieldRule,
        witness: RankWitness::FixedField { q0: q.q0, m: q.m, characteristic: q.characteristic },
    })
}

/// F_q ⊆ F_q' iff q'/q is an integer.
pub fn fixed_field_subfield(q: &Rational, q_prime: &Rational) -> Result<bool> {
    if q.is_zero() || q_prime.is_zero() {
        return Err(Error::ZeroIndex);
    }
    Ok((q_prime / q).is_integer())
}

/// [F_q^alg ∩ F_mq : F_q] = m.
pub fn intersection_degree(q: &Rational, m: u64) -> Result<u64> {
    if q.is_zero() {
        return Err(Error::ZeroIndex);
    }
    if m == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    Ok(m)
}

/// x0^(1/S) for the rationality exponent S.
pub fn exact_root_at_exponent(x0: &Rational) -> Result<Rational> {
    let s = rationality_exponent(x0)?;
    let r = crate::arith::rational_nth_root(x0, s as u32)?
        .ok_or_else(|| Error::Internal("exponent gcd root is not rational".into()))?;
    debug_assert_eq!(rational_pow(&r, s as u32), *x0);
    Ok(r)
}
