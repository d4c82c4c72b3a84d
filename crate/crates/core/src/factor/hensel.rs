//! Multifactor Hensel lifting along a balanced factor tree.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::modp::{Zp, ZpPoly};
use super::zpoly::{self, ZPoly};

#[cfg(test)]
fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zpoly::reduce_mod(&zpoly::mul(a, b), m)
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    zpoly::reduce_mod(&v, m)
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    zpoly::reduce_mod(&v, m)
}

/// Division by a monic `b` modulo m.
fn divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b.last().unwrap().is_one());
    if a.len() <= db {
        return (Vec::new(), zpoly::reduce_mod(a, m));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    zpoly::trim(&mut q);
    (q, zpoly::reduce_mod(&r, m))
}

fn lift_u64(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Quadratic lifting of f = g*h (h monic) from mod p to mod p^k.
fn lift_pair(f: &[BigInt], g: &[u64], h: &[u64], zp: Zp, pk: &BigInt) -> (ZPoly, ZPoly) {
    let (s0, t0) = zp.bezout(g, h);
    let (mut g, mut h, mut s, mut t) = (lift_u64(g), lift_u64(h), lift_u64(&s0), lift_u64(&t0));
    let mut m = BigInt::from(zp.p);
    while &m < pk {
        let m2 = &m * &m;
        let e = sub_mod(f, &zpoly::mul(&g, &h), &m2);
        let (q, r) = divrem_monic_mod(&zpoly::mul(&s, &e), &h, &m2);
        let g_new = add_mod(&add_mod(&g, &zpoly::mul(&t, &e), &m2), &zpoly::mul(&q, &g), &m2);
        let h_new = add_mod(&h, &r, &m2);
        let b = sub_mod(
            &add_mod(&zpoly::mul(&s, &g_new), &zpoly::mul(&t, &h_new), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = divrem_monic_mod(&zpoly::mul(&s, &b), &h_new, &m2);
        s = sub_mod(&s, &d, &m2);
        t = sub_mod(&sub_mod(&t, &zpoly::mul(&t, &b), &m2), &zpoly::mul(&c, &g_new), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (zpoly::reduce_mod(&g, pk), zpoly::reduce_mod(&h, pk))
}

/// Lifts `f ≡ lc(f) * prod(factors) (mod p)` to monic factors modulo `pk`.
/// `factors` must be monic, pairwise coprime mod p, and p must not divide lc(f).
pub fn hensel_lift(f: &[BigInt], factors: &[ZpPoly], zp: Zp, pk: &BigInt) -> Vec<ZPoly> {
    let f = zpoly::reduce_mod(f, pk);
    lift_rec(&f, factors, zp, pk)
}

fn lift_rec(f: &[BigInt], factors: &[ZpPoly], zp: Zp, pk: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(pk).expect("leading coefficient invertible mod p^k");
        let v: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![zpoly::reduce_mod(&v, pk)];
    }
    let mid = factors.len() / 2;
    let lc = zp.reduce_int(f.last().unwrap());
    let g0 = factors[..mid].iter().fold(vec![lc], |acc, x| zp.mul_poly(&acc, x));
    let h0 = factors[mid..].iter().fold(vec![1u64], |acc, x| zp.mul_poly(&acc, x));
    let (g, h) = lift_pair(f, &g0, &h0, zp, pk);
    let mut out = lift_rec(&g, &factors[..mid], zp, pk);
    out.extend(lift_rec(&h, &factors[mid..], zp, pk));
    out
}
