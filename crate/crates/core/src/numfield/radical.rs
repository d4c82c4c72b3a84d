//! Membership in L^n and in -4 L^4.
//!
//! A "yes" is always proved by an explicit root found by factoring x^n - a
//! over L. A "no" comes from the first of three exact tests to succeed: the
//! norm is not an n-th power in Q; a is not an n-th power modulo a degree-one
//! prime of L; or x^n - a has no linear factor over L.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{factor_over_k, KPoly, NfElem, NumberField};
use crate::arith::{is_prime_u64, rat, rational_nth_root_opt, Rational};
use crate::error::{Error, Result};
use crate::factor::modp::{trim, Zp};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

/// How a membership question was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerMethod {
    /// Exact radical of a rational number.
    Exact,
    /// The norm is not an n-th power in Q.
    Norm,
    /// Not an n-th power in the residue field F_modulus of a degree-one prime.
    Residue { modulus: u64 },
    /// Factoring x^n - a over L.
    Factorization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerTest {
    pub is_power: bool,
    pub method: PowerMethod,
}

const RESIDUE_TRIES: usize = 24;
const RESIDUE_SCAN: u64 = 4000;

fn has_root_of_binomial(l: &NumberField, n: usize, c: &NfElem) -> Result<bool> {
    // x^n + c
    let mut coeffs = vec![l.zero(); n + 1];
    coeffs[0] = c.clone();
    coeffs[n] = l.one();
    let f: KPoly = Poly::new(coeffs);
    Ok(factor_over_k(l, &f)?.factors.iter().any(|(g, _)| g.degree() == Some(1)))
}

fn reduce_rational(zp: &Zp, r: &Rational) -> Option<u64> {
    let m = BigInt::from(zp.p);
    if r.denom().mod_floor(&m).is_zero() {
        return None;
    }
    Some(zp.mul(zp.reduce_int(r.numer()), zp.inv(zp.reduce_int(r.denom()))))
}

fn roots_mod(zp: &Zp, f: &[u64], seed: u64) -> Vec<u64> {
    let h = zp.powmod(&[0, 1], &BigUint::from(zp.p), f);
    let g = zp.gcd(f, &zp.sub_poly(&h, &[0, 1]));
    if g.len() < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    zp.equal_degree(&zp.monic(&g), 1, &mut rng)
        .into_iter()
        .map(|lin| zp.sub(0, lin[0]))
        .collect()
}

/// `None` when ℓ is unusable; otherwise whether a(r) fails to be an n-th
/// power in F_ℓ for some root r of the minimal polynomial mod ℓ.
fn residue_check(l: &NumberField, a: &NfElem, norm: &Rational, n: u32, ell: u64) -> Option<bool> {
    if ell < 3 || ell >= (1 << 31) || (ell - 1) % u64::from(n) != 0 || !is_prime_u64(ell) {
        return None;
    }
    let zp = Zp::new(ell);
    let reduce_all = |v: &[Rational]| v.iter().map(|c| reduce_rational(&zp, c)).collect::<Option<Vec<u64>>>();
    let mut mp = reduce_all(l.min_poly().coeffs())?;
    let av = reduce_all(&a.coords)?;
    if reduce_rational(&zp, norm)? == 0 {
        return None;
    }
    trim(&mut mp);
    if !zp.is_squarefree(&mp) {
        return None;
    }
    let exp = (ell - 1) / u64::from(n);
    Some(roots_mod(&zp, &mp, ell).into_iter().any(|r| {
        let v = av.iter().rev().fold(0, |acc, &c| zp.add(zp.mul(acc, r), c));
        zp.pow(v, exp) != 1
    }))
}

/// A prime ℓ ≡ 1 (mod n) with a degree-one prime above it at which `a` is a
/// unit but not an n-th power, proving a ∉ L^n.
///
/// Soundness: ℓ divides neither the denominators of the minimal polynomial
/// and of a, nor the norm of a, and the minimal polynomial is squarefree mod
/// ℓ, so Z_(ℓ)[t] is the ℓ-local maximal order and a is a unit at every prime
/// above ℓ. Any n-th root of a is then ℓ-integral and reduces to an n-th root
/// of a(r) in F_ℓ for every root r of the minimal polynomial mod ℓ.
pub fn residue_obstruction(l: &NumberField, a: &NfElem, n: u32) -> Option<u64> {
    let norm = l.norm(a);
    if Zero::is_zero(&norm) || n < 2 {
        return None;
    }
    let mut tried = 0;
    for k in 1..=RESIDUE_SCAN {
        let ell = 1 + k * u64::from(n);
        match residue_check(l, a, &norm, n, ell) {
            Some(true) => return Some(ell),
            Some(false) => tried += 1,
            None => {}
        }
        if tried >= RESIDUE_TRIES {
            break;
        }
    }
    None
}

/// Decides a ∈ L^n, reporting the method that settled it.
pub fn power_test(l: &NumberField, a: &NfElem, n: u32) -> Result<PowerTest> {
    if Scalar::is_zero(a) {
        return Err(Error::ZeroElement);
    }
    if let Some(r) = a.as_rational().filter(|_| l.is_rationals()) {
        return Ok(PowerTest { is_power: rational_nth_root_opt(r, n).is_some(), method: PowerMethod::Exact });
    }
    if rational_nth_root_opt(&l.norm(a), n).is_none() {
        return Ok(PowerTest { is_power: false, method: PowerMethod::Norm });
    }
    if let Some(modulus) = residue_obstruction(l, a, n) {
        return Ok(PowerTest { is_power: false, method: PowerMethod::Residue { modulus } });
    }
    let is_power = has_root_of_binomial(l, n as usize, &l.neg(a))?;
    Ok(PowerTest { is_power, method: PowerMethod::Factorization })
}

/// True iff a = β^p for some β in L.
pub fn is_pth_power(l: &NumberField, a: &NfElem, p: u32) -> Result<bool> {
    Ok(power_test(l, a, p)?.is_power)
}

/// Decides a ∈ -4 L^4, i.e. whether -a/4 is a fourth power in L.
pub fn minus_four_test(l: &NumberField, a: &NfElem) -> Result<PowerTest> {
    if Scalar::is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let target = l.mul(a, &l.from_rational(&rat(-1, 4)));
    power_test(l, &target, 4)
}

/// True iff a = -4 γ^4 for some γ in L.
pub fn in_minus4_fourth_powers(l: &NumberField, a: &NfElem) -> Result<bool> {
    Ok(minus_four_test(l, a)?.is_power)
}

/// Replays a recorded membership test; true when it reproduces `expected`.
pub fn replay_power_test(l: &NumberField, a: &NfElem, n: u32, expected: &PowerTest) -> Result<bool> {
    let ok = match expected.method {
        PowerMethod::Exact => {
            let r = a.as_rational().ok_or_else(|| Error::ValidationFailed("not rational".into()))?;
            rational_nth_root_opt(r, n).is_some() == expected.is_power
        }
        PowerMethod::Norm => !expected.is_power && rational_nth_root_opt(&l.norm(a), n).is_none(),
        PowerMethod::Residue { modulus } => {
            !expected.is_power && residue_check(l, a, &l.norm(a), n, modulus) == Some(true)
        }
        PowerMethod::Factorization => {
            has_root_of_binomial(l, n as usize, &l.neg(a))? == expected.is_power
        }
    };
    Ok(ok)
}
