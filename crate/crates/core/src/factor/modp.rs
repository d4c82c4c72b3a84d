//! Polynomials over the prime field F_p, p < 2^31, as `Vec<u64>` (low to high,
//! no trailing zeros).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rand::Rng;

pub type ZpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Zp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_ints(&self, coeffs: &[BigInt]) -> ZpPoly {
        let mut v: ZpPoly = coeffs.iter().map(|c| self.reduce_int(c)).collect();
        trim(&mut v);
        v
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // p < 2^31: each product < 2^62, so four can be summed before reducing
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn add_poly(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        let mut out: ZpPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub_poly(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        let mut out: ZpPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[u64], c: u64) -> ZpPoly {
        let mut out: ZpPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &[u64]) -> ZpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// (s, t) with s*a + t*b = 1 for coprime a, b; deg s < deg b, deg t < deg a.
    pub fn bezout(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (ZpPoly, ZpPoly) = (vec![1], vec![]);
        let (mut t0, mut t1): (ZpPoly, ZpPoly) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        assert_eq!(r0.len(), 1, "bezout called on non-coprime inputs");
        let inv = self.inv(r0[0]);
        (self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> ZpPoly {
        let mut out: ZpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    pub fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> ZpPoly {
        let mut result = self.rem(&[1], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul_poly(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
        }
        result
    }

    /// Rows x^(i*p) mod f for i < deg f (Berlekamp's Frobenius matrix).
    fn frobenius_matrix(&self, f: &[u64]) -> Vec<ZpPoly> {
        let n = f.len() - 1;
        let xp = self.powmod(&[0, 1], &BigUint::from(self.p), f);
        let mut rows = Vec::with_capacity(n);
        let mut cur: ZpPoly = vec![1];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = self.rem(&self.mul_poly(&cur, &xp), f);
        }
        rows
    }

    fn apply_frobenius(&self, h: &[u64], rows: &[ZpPoly], n: usize) -> ZpPoly {
        let mut acc = vec![0u64; n];
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in rows[i].iter().enumerate() {
                acc[j] = (acc[j] + c * r) % self.p;
            }
        }
        trim(&mut acc);
        acc
    }

    /// Distinct-degree factorization of a monic squarefree `f`:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(ZpPoly, usize)> {
        let n = f.len() - 1;
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let rows = self.frobenius_matrix(f);
        let mut cur = f.to_vec();
        let mut h: ZpPoly = self.rem(&[0, 1], f);
        let mut d = 0;
        while 2 * (d + 1) <= cur.len() - 1 {
            d += 1;
            h = self.apply_frobenius(&h, &rows, n);
            let diff = self.sub_poly(&h, &[0, 1]);
            let g = self.gcd(&cur, &self.rem(&diff, &cur));
            if g.len() > 1 {
                cur = self.divrem(&cur, &g).0;
                out.push((g, d));
            }
        }
        if cur.len() > 1 {
            let deg = cur.len() - 1;
            out.push((self.monic(&cur), deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
    pub fn equal_degree<R: Rng>(&self, g: &[u64], d: usize, rng: &mut R) -> Vec<ZpPoly> {
        let n = g.len() - 1;
        if n == d {
            return vec![g.to_vec()];
        }
        let e = (num_traits::pow(BigUint::from(self.p), d) - 1u32) / 2u32;
        loop {
            let mut a: ZpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.sub_poly(&self.powmod(&a, &e, g), &[1]);
            let h = self.gcd(g, &b);
            if h.len() > 1 && h.len() < g.len() {
                let other = self.monic(&self.divrem(g, &h).0);
                let mut out = self.equal_degree(&h, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<ZpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }
}

pub fn trim(v: &mut ZpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degrees of the irreducible factors read off a distinct-degree split.
pub fn degree_pattern(ddf: &[(ZpPoly, usize)]) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in ddf {
        let count = (g.len() - 1) / d;
        out.extend(std::iter::repeat_n(*d, count));
    }
    out
}

/// Bitset of achievable subset sums of `degrees` (index = degree).
pub fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}
