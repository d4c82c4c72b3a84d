//! Exact integers and rationals, integer factorization and radical tests.
//!
//! Integers and rationals are the `num-bigint` / `num-rational` types; this
//! module adds factorization, exponent vectors and exact rational roots on top.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Prime factorization: prime -> exponent (all exponents >= 1).
pub type FactorMap = BTreeMap<Integer, u32>;

/// Prime -> signed exponent of a positive rational.
pub type ExponentVector = BTreeMap<Integer, i64>;

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Factor `n >= 1` into primes: trial division up to 10^6, then Pollard rho.
pub fn factor_integer(n: &Integer) -> Result<FactorMap> {
    if !n.is_positive() {
        return Err(Error::NonPositive(n.to_string()));
    }
    let mut out = FactorMap::new();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        rest = Integer::from(trial_divide_u64(small, &mut out));
    } else {
        rest = trial_divide_big(rest, &mut out);
    }
    if !rest.is_one() {
        split_large(rest, &mut out);
    }
    Ok(out)
}

fn trial_divide_u64(mut n: u64, out: &mut FactorMap) -> u64 {
    let push = |p: u64, e: u32, out: &mut FactorMap| {
        if e > 0 {
            *out.entry(Integer::from(p)).or_insert(0) += e;
        }
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e, out);
    }
    // wheel over residues coprime to 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while d <= TRIAL_LIMIT && d.saturating_mul(d) <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        push(d, e, out);
        d += STEPS[i];
        i = (i + 1) % 8;
    }
    // leftover below d^2 has no factor < d, so it is prime
    if n > 1 && d.saturating_mul(d) > n {
        push(n, 1, out);
        return 1;
    }
    n
}

fn trial_divide_big(mut n: Integer, out: &mut FactorMap) -> Integer {
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let dd = Integer::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        while (&n % &dd).is_zero() {
            n /= &dd;
            e += 1;
        }
        if e > 0 {
            *out.entry(dd).or_insert(0) += e;
            if let Some(small) = n.to_u64() {
                return Integer::from(trial_divide_u64(small, out));
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > Integer::one() {
        let dd = Integer::from(d);
        if &dd * &dd > n {
            *out.entry(n).or_insert(0) += 1;
            return Integer::one();
        }
    }
    n
}

fn split_large(n: Integer, out: &mut FactorMap) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    if let Some(r) = exact_root_any(&n) {
        let (base, k) = r;
        let mut sub = FactorMap::new();
        split_large(base, &mut sub);
        for (p, e) in sub {
            *out.entry(p).or_insert(0) += e * k;
        }
        return;
    }
    let d = pollard_brent(&n);
    split_large(d.clone(), out);
    split_large(n / d, out);
}

/// Largest k >= 2 with n = b^k, if any.
fn exact_root_any(n: &Integer) -> Option<(Integer, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits.max(2)).rev() {
        let r = n.nth_root(k);
        if Pow::pow(&r, k) == *n && r > Integer::one() {
            return Some((r, k));
        }
    }
    None
}

trait Pow {
    fn pow(&self, k: u32) -> Integer;
}

impl Pow for Integer {
    fn pow(&self, k: u32) -> Integer {
        num_traits::pow(self.clone(), k as usize)
    }
}

fn pollard_brent(n: &Integer) -> Integer {
    if n.is_even() {
        return int(2);
    }
    let one = Integer::one();
    let mut c = Integer::one();
    loop {
        let f = |x: &Integer| (x * x + &c) % n;
        let mut y = int(2);
        let mut r: u64 = 1;
        let mut q = Integer::one();
        let mut g = Integer::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

/// Miller-Rabin with the first 20 prime bases; deterministic far beyond u64.
pub fn is_probable_prime(n: &Integer) -> bool {
    if *n < int(2) {
        return false;
    }
    const BASES: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for b in BASES {
        let bb = Integer::from(b);
        if *n == bb {
            return true;
        }
        if (n % &bb).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for b in BASES {
        let mut x = Integer::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    is_probable_prime(&Integer::from(n))
}

/// Primes p <= n in increasing order.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Euler's totient of a small positive integer.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Exponents of the prime factorization of a positive rational.
pub fn exponent_vector(x: &Rational) -> Result<ExponentVector> {
    if !x.is_positive() {
        return Err(Error::NonPositive(format_rational(x)));
    }
    let mut out = ExponentVector::new();
    for (p, e) in factor_integer(x.numer())? {
        out.insert(p, e as i64);
    }
    for (p, e) in factor_integer(x.denom())? {
        out.insert(p, -(e as i64));
    }
    Ok(out)
}

/// The rational r with r^n = x, if one exists (the positive one for even n).
pub fn rational_nth_root(x: &Rational, n: u32) -> Result<Option<Rational>> {
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    if x.is_zero() {
        return Ok(Some(Rational::zero()));
    }
    if x.is_negative() && n % 2 == 0 {
        return Err(Error::EvenRootOfNegative);
    }
    let num = integer_nth_root(&x.numer().abs(), n);
    let den = integer_nth_root(x.denom(), n);
    Ok(match (num, den) {
        (Some(a), Some(b)) => {
            let r = Rational::new(a, b);
            Some(if x.is_negative() { -r } else { r })
        }
        _ => None,
    })
}

/// Like `rational_nth_root`, but a negative radicand under an even root is
/// simply "no root".
pub fn rational_nth_root_opt(x: &Rational, n: u32) -> Option<Rational> {
    rational_nth_root(x, n).ok().flatten()
}

fn integer_nth_root(n: &Integer, k: u32) -> Option<Integer> {
    let r = n.nth_root(k);
    (Pow::pow(&r, k) == *n).then_some(r)
}

pub fn rational_pow(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

/// Canonical string form: "p" for integers, "p/q" otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let parse_int = |t: &str| -> Result<Integer> {
        let t = t.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        if t.is_empty() {
            return Err(bad());
        }
        t.parse::<Integer>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
    }
}

/// Integer binary logarithm upper bound helper: ln(n) rounded up, n >= 1.
pub fn ln_upper(n: &Integer) -> f64 {
    let n = n.abs();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 52 {
        let v = n.to_f64().unwrap();
        return next_up(v.ln());
    }
    let shift = bits - 52;
    let top = (&n >> shift).to_f64().unwrap() + 1.0;
    next_up(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// ln(n) rounded down, n >= 1.
pub fn ln_lower(n: &Integer) -> f64 {
    let n = n.abs();
    let bits = n.bits();
    if bits <= 52 {
        return next_down(n.to_f64().unwrap().ln());
    }
    let shift = bits - 52;
    let top = (&n >> shift).to_f64().unwrap();
    next_down(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Nudges a float result outward by a margin that dominates libm error.
pub fn next_up(x: f64) -> f64 {
    x + x.abs() * 1e-12 + 1e-300
}

pub fn next_down(x: f64) -> f64 {
    x - x.abs() * 1e-12 - 1e-300
}

pub fn sign_of(x: &Rational) -> Sign {
    x.numer().sign()
}
