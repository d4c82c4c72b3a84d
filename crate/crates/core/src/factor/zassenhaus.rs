//! Zassenhaus factorization of squarefree primitive integer polynomials:
//! modular factorization at a well-chosen prime, Hensel lifting, and
//! exhaustive recombination filtered by degree patterns.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hensel::hensel_lift;
use super::modp::{degree_pattern, subset_sums, Zp, ZpPoly};
use super::zpoly::{self, ZPoly};
use crate::arith::is_prime_u64;
use crate::par;

const PRIME_BATCH: usize = 12;

struct Survey {
    /// allowed[d]: some factor of degree d is compatible with every pattern seen
    allowed: Vec<bool>,
    irreducible: bool,
    best: Option<(usize, u64)>,
}

fn wanted_primes(n: usize) -> usize {
    match n {
        0..=4 => 3,
        5..=16 => 6,
        _ => 10,
    }
}

fn survey_primes(f: &[BigInt]) -> Survey {
    let n = f.len() - 1;
    let lc = f.last().unwrap();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(usize, u64)> = None;
    let mut good = 0;
    let mut next = 3u64;
    let want = wanted_primes(n);
    let mut scanned = 0;
    while good < want && scanned < 4000 {
        let mut batch = Vec::with_capacity(PRIME_BATCH);
        while batch.len() < PRIME_BATCH {
            if is_prime_u64(next) && !(lc % next).is_zero() {
                batch.push(next);
            }
            next += 2;
        }
        scanned += batch.len();
        let patterns = par::map(&batch, |&p| {
            let zp = Zp::new(p);
            let fp = zp.monic(&zp.from_ints(f));
            if !zp.is_squarefree(&fp) {
                return None;
            }
            Some(degree_pattern(&zp.distinct_degree(&fp)))
        });
        for (p, pat) in batch.iter().zip(patterns) {
            let Some(pat) = pat else { continue };
            good += 1;
            if pat.len() == 1 {
                return Survey { allowed, irreducible: true, best: Some((1, *p)) };
            }
            let sums = subset_sums(&pat, n);
            for (a, s) in allowed.iter_mut().zip(sums) {
                *a &= s;
            }
            if best.is_none_or(|(c, _)| pat.len() < c) {
                best = Some((pat.len(), *p));
            }
            if good >= want {
                break;
            }
        }
        if !allowed[1..n].iter().any(|&a| a) {
            return Survey { allowed, irreducible: true, best };
        }
    }
    Survey { allowed, irreducible: false, best }
}

/// Factors a squarefree primitive polynomial with positive leading
/// coefficient into primitive irreducibles (positive leading coefficients).
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let mut f = f.to_vec();
    zpoly::trim(&mut f);
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    let n = f.len() - 1;
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(f);
        return out;
    }
    let survey = survey_primes(&f);
    if survey.irreducible {
        out.push(f);
        return out;
    }
    let (_, p) = survey.best.expect("a good prime exists for a squarefree polynomial");
    let zp = Zp::new(p);
    let fp = zp.monic(&zp.from_ints(&f));
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((n as u64) << 32));
    let modular = zp.factor_squarefree(&fp, &mut rng);
    if modular.len() == 1 {
        out.push(f);
        return out;
    }
    let lc = f.last().unwrap().clone();
    // Mignotte-style bound on coefficients of lc * (any factor)
    let bound = lc.magnitude().clone() * (BigInt::one() << n).magnitude() * zpoly::norm2_ceil(&f).magnitude();
    let bound = BigInt::from(bound) * 2;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
    }
    let lifted = hensel_lift(&f, &modular, zp, &pk);
    out.extend(recombine(f, &lifted, &pk, &survey.allowed));
    out
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zpoly::reduce_mod(&zpoly::mul(a, b), m)
}

fn sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if r > (m >> 1) {
        r - m
    } else {
        r
    }
}

fn recombine(mut f: ZPoly, lifted: &[ZPoly], pk: &BigInt, allowed: &[bool]) -> Vec<ZPoly> {
    let degs: Vec<usize> = lifted.iter().map(|u| u.len() - 1).collect();
    let consts: Vec<BigInt> = lifted.iter().map(|u| u[0].clone()).collect();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        let b = f.last().unwrap().clone();
        let target = &b * &f[0];
        let mut combo: Vec<usize> = (0..s).collect();
        loop {
            let idx: Vec<usize> = combo.iter().map(|&c| remaining[c]).collect();
            let d: usize = idx.iter().map(|&i| degs[i]).sum();
            if allowed[d] {
                let c0 = sym(&idx.iter().fold(b.clone(), |acc, &i| (acc * &consts[i]).mod_floor(pk)), pk);
                if !c0.is_zero() && (&target % &c0).is_zero() {
                    let g = idx.iter().fold(vec![b.clone()], |acc, &i| mul_mod(&acc, &lifted[i], pk));
                    let g = zpoly::primitive(&zpoly::symmetric_mod(&g, pk));
                    if let Some(q) = zpoly::div_exact(&f, &g) {
                        hit = Some((combo.clone(), g, q));
                        break;
                    }
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        match hit {
            Some((combo, g, q)) => {
                found.push(g);
                f = q;
                for &c in combo.iter().rev() {
                    remaining.remove(c);
                }
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        found.push(zpoly::primitive(&f));
    }
    found
}

/// Advances `combo` (strictly increasing indices < n) in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Degree patterns of `f` modulo the first `count` good primes, for
/// irreducibility spot checks.
pub fn modular_patterns(f: &[BigInt], count: usize) -> Vec<(u64, Vec<usize>)> {
    let lc = f.last().unwrap();
    let mut out = Vec::new();
    let mut p = 3u64;
    while out.len() < count {
        if is_prime_u64(p) && !(lc % p).is_zero() {
            let zp = Zp::new(p);
            let fp: ZpPoly = zp.monic(&zp.from_ints(f));
            if zp.is_squarefree(&fp) {
                out.push((p, degree_pattern(&zp.distinct_degree(&fp))));
            }
        }
        p += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
