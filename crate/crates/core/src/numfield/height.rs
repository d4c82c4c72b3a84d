//! Certified bounds on absolute logarithmic Weil heights.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use super::{NfElem, NumberField};
use crate::arith::{ln_upper, next_down, next_up, totient};
use crate::error::{Error, Result};
use crate::factor::zpoly::{self, graeffe, sum_of_squares};
use crate::field::Scalar;
use crate::poly::{qring, QPoly};

const GRAEFFE_STEPS: u32 = 12;
const GRAEFFE_BITS: u64 = 20_000;

/// Upper bound on log M(f) for a nonzero integer polynomial, from
/// ||f_k||_2^(1/2^k) >= M(f) applied to the Graeffe iterates f_k.
pub fn log_mahler_upper(f: &[BigInt]) -> f64 {
    let mut g = f.to_vec();
    let mut best = next_up(ln_upper(&sum_of_squares(&g)) / 2.0);
    for k in 1..=GRAEFFE_STEPS {
        g = graeffe(&g);
        let s = sum_of_squares(&g);
        if s.bits() > GRAEFFE_BITS {
            break;
        }
        let bound = next_up(ln_upper(&s) / f64::from(2u32 << k));
        best = best.min(bound);
    }
    best.max(0.0)
}

/// Whether the monic rational polynomial f divides x^m - 1 for some m.
fn is_cyclotomic_minpoly(f: &QPoly) -> bool {
    let n = f.degree().unwrap_or(0) as u64;
    if n == 0 {
        return false;
    }
    let q = qring();
    let x = q.x();
    (1..=2 * n * n)
        .filter(|&m| totient(m) == n)
        .any(|m| q.powmod(&x, &BigUint::from(m), f).map(|r| r == q.one()).unwrap_or(false))
}

/// Certified upper bound on h(a).
pub fn weil_height(l: &NumberField, a: &NfElem) -> Result<f64> {
    if Scalar::is_zero(a) {
        return Err(Error::ZeroElement);
    }
    if let Some(r) = a.as_rational() {
        let m = r.numer().abs().max(r.denom().clone());
        if m.is_one() {
            return Ok(0.0);
        }
        return Ok(ln_upper(&m));
    }
    let mp = l.minpoly(a);
    if is_cyclotomic_minpoly(&mp) {
        return Ok(0.0);
    }
    let f = zpoly::from_qpoly(&mp);
    let d = (f.len() - 1) as f64;
    Ok(next_up(log_mahler_upper(&f) / d))
}

fn lower_bound_exact_degree(d: usize) -> f64 {
    match d {
        0 | 1 => std::f64::consts::LN_2,
        2 => 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln(),
        _ => {
            let df = d as f64;
            let voutier = 2.0 / (df * (3.0 * df).ln().powi(3));
            let dobrowolski = (df.ln().ln() / df.ln()).powi(3) / (4.0 * df);
            voutier.max(dobrowolski)
        }
    }
}

/// A positive lower bound for h(β) over all algebraic β of degree at most d
/// that are neither zero nor roots of unity.
pub fn height_lower_bound(d: usize) -> f64 {
    let raw = (1..=d.max(1)).map(lower_bound_exact_degree).fold(f64::INFINITY, f64::min);
    next_down(raw * 0.999)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::field::Field;

    #[test]
    fn height_examples() {
        let q = NumberField::rationals();
        let h2 = weil_height(&q, &q.from_int(2)).unwrap();
        assert!(h2 >= std::f64::consts::LN_2 && h2 < std::f64::consts::LN_2 + 1e-9);
        assert_eq!(weil_height(&q, &q.from_int(1)).unwrap(), 0.0);
        assert_eq!(weil_height(&q, &q.zero()), Err(Error::ZeroElement));

        let k = NumberField::new(QPoly::from_ints(&[-3, 0, 1])).unwrap();
        let a = k.elem(vec![rat_int(2), rat_int(1)]);
        let exact = 0.5 * (2.0 + 3f64.sqrt()).ln();
        let h = weil_height(&k, &a).unwrap();
        assert!(h >= exact, "{h} < {exact}");
        assert!(h < exact + 1e-3, "{h} too loose");

        let gauss = NumberField::new(QPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(weil_height(&gauss, &gauss.generator()).unwrap(), 0.0);
    }

    #[test]
    fn lower_bound_is_below_known_small_heights() {
        // Lehmer's number has height log(1.17628...)/10
        let lehmer = 1.176_280_818_259_917_5f64.ln() / 10.0;
        assert!(height_lower_bound(10) < lehmer);
        assert!(height_lower_bound(2) <= 0.5 * 1.618_034f64.ln());
        for d in 1..100 {
            assert!(height_lower_bound(d + 1) <= height_lower_bound(d));
            assert!(height_lower_bound(d) > 0.0);
        }
    }

    #[test]
    fn mahler_bound_dominates_roots() {
        // x^2 - 4x + 1: M = 2 + sqrt 3
        let f: Vec<BigInt> = [1, -4, 1].iter().map(|&c| BigInt::from(c)).collect();
        let m = log_mahler_upper(&f);
        assert!(m >= (2.0 + 3f64.sqrt()).ln());
    }
}
