//! Factorization of univariate polynomials over the rationals.

pub mod hensel;
pub mod modp;
pub mod zassenhaus;
pub mod zpoly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{qring, Poly, QPoly};
use modp::Zp;

/// `p = unit * prod factor^multiplicity`, factors monic, irreducible and
/// sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, u32)>,
}

impl<E: Scalar> Factorization<E> {
    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap(), *m as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

pub fn cmp_qpoly(a: &QPoly, b: &QPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

pub(crate) fn squarefree_mod_some_prime(f: &[BigInt]) -> bool {
    let lc = f.last().unwrap();
    // a squarefree reduction at a prime not dividing lc proves f squarefree
    [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        .into_iter()
        .filter(|p| !(lc % p).is_zero())
        .take(4)
        .any(|p| {
            let zp = Zp::new(p);
            let fp = zp.from_ints(f);
            fp.len() == f.len() && zp.is_squarefree(&fp)
        })
}

/// Complete factorization over Q: squarefree split, then Zassenhaus on each
/// squarefree part.
pub fn factor_over_q(p: &QPoly) -> Result<Factorization<Rational>> {
    let unit = p.lc().ok_or(Error::ZeroPolynomial)?.clone();
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    if p.degree() == Some(0) {
        return Ok(Factorization { unit, factors });
    }
    let f = zpoly::from_qpoly(p);
    let parts: Vec<(QPoly, u32)> = if squarefree_mod_some_prime(&f) {
        vec![(zpoly::to_qpoly(&f), 1)]
    } else {
        qring().squarefree_decomposition(&zpoly::to_qpoly(&f))?
    };
    for (part, mult) in parts {
        for g in zassenhaus::factor_squarefree(&zpoly::from_qpoly(&part)) {
            factors.push((zpoly::to_monic_qpoly(&g), mult));
        }
    }
    factors.sort_by(|a, b| cmp_qpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible_over_q(p: &QPoly) -> Result<bool> {
    if p.degree().ok_or(Error::ZeroPolynomial)? == 0 {
        return Ok(false);
    }
    Ok(factor_over_q(p)?.is_irreducible())
}

/// The rational roots of `p` (distinct), via the linear factors.
pub fn rational_roots(p: &QPoly) -> Result<Vec<Rational>> {
    Ok(factor_over_q(p)?
        .factors
        .iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeffs()[0].clone())
        .collect())
}
