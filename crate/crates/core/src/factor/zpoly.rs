//! Integer polynomials as `Vec<BigInt>` (low to high, trimmed).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::poly::QPoly;

pub type ZPoly = Vec<BigInt>;

pub fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if f.last().unwrap().is_negative() { -c } else { c };
    f.iter().map(|x| x / &c).collect()
}

/// Clears denominators: returns the primitive integer polynomial with positive
/// leading coefficient that is a rational multiple of `p`.
pub fn from_qpoly(p: &QPoly) -> ZPoly {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: ZPoly = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive(&v)
}

pub fn to_qpoly(f: &[BigInt]) -> QPoly {
    QPoly::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Monic rational version of an integer polynomial.
pub fn to_monic_qpoly(f: &[BigInt]) -> QPoly {
    let lc = Rational::from_integer(f.last().unwrap().clone());
    QPoly::new(f.iter().map(|c| Rational::from_integer(c.clone()) / &lc).collect())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division over Z; `None` if `b` does not divide `a` in Z[x].
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= db {
        return None;
    }
    let lc = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// ceil(||f||_2).
pub fn norm2_ceil(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

pub fn sum_of_squares(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c * c).sum()
}

/// One Graeffe root-squaring step: the result's roots are the squares of the
/// roots of `f`, with |lc| preserved in the same way.
pub fn graeffe(f: &[BigInt]) -> ZPoly {
    let even: ZPoly = f.iter().step_by(2).cloned().collect();
    let odd: ZPoly = f.iter().skip(1).step_by(2).cloned().collect();
    let e2 = mul(&even, &even);
    let o2 = mul(&odd, &odd);
    let n = f.len() - 1;
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, c) in e2.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in o2.into_iter().enumerate() {
        out[i + 1] -= c;
    }
    if n % 2 == 1 {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    trim(&mut out);
    out
}

pub fn reduce_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut v);
    v
}

/// Coefficients mapped into (-m/2, m/2].
pub fn symmetric_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    let mut v: ZPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut v);
    v
}
