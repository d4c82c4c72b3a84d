//! Factoring over number fields by the norm method, and tower flattening.

use num_traits::{One, Zero};

use super::{sort_factors, KPoly, NfElem, NumberField};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::factor::{self, zpoly, Factorization};
use crate::field::{Field, Scalar};
use crate::poly::{qring, QPoly};

/// Shift values 0, 1, -1, 2, -2, ...
fn shift_value(i: usize) -> i64 {
    let i = i as i64;
    if i % 2 == 1 {
        (i + 1) / 2
    } else {
        -(i / 2)
    }
}

const MAX_SHIFTS: usize = 200;

fn is_squarefree_q(n: &QPoly) -> Result<bool> {
    if n.degree().unwrap_or(0) <= 1 {
        return Ok(true);
    }
    if factor::squarefree_mod_some_prime(&zpoly::from_qpoly(n)) {
        return Ok(true);
    }
    let q = qring();
    Ok(q.gcd(n, &q.derivative(n))?.degree() == Some(0))
}

/// Splits a monic squarefree `g` over K into monic irreducible factors.
fn factor_squarefree_k(k: &NumberField, g: &KPoly) -> Result<Vec<KPoly>> {
    if g.degree().unwrap_or(0) <= 1 {
        return Ok(vec![g.clone()]);
    }
    let ring = k.poly_ring();
    let theta = k.generator();
    for i in 0..MAX_SHIFTS {
        let s = k.from_int(shift_value(i));
        let st = k.mul(&s, &theta);
        let b = ring.shift(g, &k.neg(&st));
        let n = k.norm_poly(&b);
        if !is_squarefree_q(&n)? {
            continue;
        }
        let nf = factor::factor_over_q(&n)?;
        if nf.factors.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        let mut out = Vec::with_capacity(nf.factors.len());
        let mut rest = b.clone();
        for (ni, _) in &nf.factors {
            let h = ring.gcd(&rest, &k.embed_qpoly(ni))?;
            if h.degree() == Some(0) {
                continue;
            }
            rest = ring.div_exact(&rest, &h).ok_or_else(|| Error::Internal("norm factor does not divide".into()))?;
            out.push(ring.shift(&h, &st));
        }
        if rest.degree() != Some(0) {
            return Err(Error::Internal("norm factors do not exhaust the polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm found".into()))
}

/// Complete factorization over K: unit times monic irreducible factors
/// with multiplicities, canonically sorted.
pub fn factor_over_k(k: &NumberField, p: &KPoly) -> Result<Factorization<NfElem>> {
    let unit = p.lc().ok_or(Error::ZeroPolynomial)?.clone();
    if p.degree() == Some(0) {
        return Ok(Factorization { unit, factors: Vec::new() });
    }
    let ring = k.poly_ring();
    let mut factors: Vec<(KPoly, u32)> = Vec::new();
    if let Some(q) = k.to_qpoly(p) {
        // split over Q first; each Q-irreducible factor is squarefree over K
        for (f, m) in factor::factor_over_q(&q)?.factors {
            if k.is_rationals() {
                factors.push((k.embed_qpoly(&f), m));
            } else {
                for h in factor_squarefree_k(k, &k.embed_qpoly(&f))? {
                    factors.push((h, m));
                }
            }
        }
    } else {
        let monic = ring.monic(p);
        for (part, m) in ring.squarefree_decomposition(&monic)? {
            for h in factor_squarefree_k(k, &part)? {
                factors.push((h, m));
            }
        }
    }
    sort_factors(&mut factors);
    Ok(Factorization { unit, factors })
}

/// A number field L = Q(u) presenting the extension K(α), α a root of an
/// irreducible Q over K, with u = α + shift·θ.
#[derive(Clone, Debug)]
pub struct Flattening {
    pub field: NumberField,
    pub base: NumberField,
    /// Image of the generator θ of K in L.
    pub base_generator: NfElem,
    /// Image of the root α in L.
    pub root: NfElem,
    pub shift: i64,
}

impl Flattening {
    /// Maps an element of K into L.
    pub fn embed(&self, a: &NfElem) -> NfElem {
        let l = &self.field;
        a.coords.iter().rev().fold(l.zero(), |acc, c| {
            l.add(&l.mul(&acc, &self.base_generator), &l.from_rational(c))
        })
    }

    pub fn embed_poly(&self, p: &KPoly) -> KPoly {
        p.map(|c| self.embed(c))
    }
}

/// Builds L = K[x]/(q) as a single extension of Q.
pub fn flatten(k: &NumberField, q: &KPoly) -> Result<Flattening> {
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let ring = k.poly_ring();
    let qm = ring.monic(q);
    if k.is_rationals() {
        let qq = k.to_qpoly(&qm).expect("rational coefficients");
        if n == 1 {
            let l = NumberField::rationals();
            let root = l.from_rational(&-qq.coeffs()[0].clone());
            return Ok(Flattening { base_generator: l.zero(), field: l, base: k.clone(), root, shift: 0 });
        }
        if !factor::is_irreducible_over_q(&qq)? {
            return Err(Error::NotIrreducible);
        }
        let l = NumberField::new_unchecked(qq);
        let root = l.generator();
        return Ok(Flattening { base_generator: l.zero(), field: l, base: k.clone(), root, shift: 0 });
    }
    if n > 1 && ring.gcd(&qm, &ring.derivative(&qm))?.degree() != Some(0) {
        return Err(Error::NotIrreducible);
    }
    let theta = k.generator();
    for i in 0..MAX_SHIFTS {
        let c = shift_value(i);
        let ct = k.mul(&k.from_int(c), &theta);
        let b = ring.shift(&qm, &k.neg(&ct));
        let g = k.norm_poly(&b);
        if !is_squarefree_q(&g)? {
            continue;
        }
        if !factor::is_irreducible_over_q(&g)? {
            return Err(Error::NotIrreducible);
        }
        let l = NumberField::new_unchecked(g);
        let (base_generator, root) = express_in_primitive(k, &qm, &ct, &l)?;
        return Ok(Flattening { field: l, base: k.clone(), base_generator, root, shift: c });
    }
    Err(Error::Internal("no primitive element found".into()))
}

/// Writes θ and α in the basis 1, u, ..., u^(D-1) where u = α + ct.
fn express_in_primitive(
    k: &NumberField,
    qm: &KPoly,
    ct: &NfElem,
    l: &NumberField,
) -> Result<(NfElem, NfElem)> {
    let d = k.degree();
    let n = qm.degree().unwrap();
    let big = d * n;
    let qc = qm.coeffs();
    let flat = |v: &[NfElem]| -> Vec<Rational> {
        let mut out = Vec::with_capacity(big);
        for e in v {
            out.extend(e.coords.iter().cloned());
        }
        out
    };
    // columns u^0 .. u^(D-1), elements of K[x]/(qm) as coefficient vectors
    let mut cur: Vec<NfElem> = vec![k.zero(); n];
    cur[0] = k.one();
    let mut columns = Vec::with_capacity(big);
    for _ in 0..big {
        columns.push(flat(&cur));
        // cur *= (x + ct)
        let mut next = vec![k.zero(); n + 1];
        for (j, a) in cur.iter().enumerate() {
            next[j + 1] = k.add(&next[j + 1], a);
            next[j] = k.add(&next[j], &k.mul(a, ct));
        }
        let top = next.pop().unwrap();
        if !Scalar::is_zero(&top) {
            for (j, nj) in next.iter_mut().enumerate() {
                *nj = k.sub(nj, &k.mul(&top, &qc[j]));
            }
        }
        cur = next;
    }
    let mut theta_target = vec![Rational::zero(); big];
    theta_target[1] = Rational::one();
    let alpha_target: Vec<Rational> = if n > 1 {
        let mut v = vec![Rational::zero(); big];
        v[d] = Rational::one();
        v
    } else {
        k.neg(&qc[0]).coords
    };
    let sol = solve_columns(&columns, &[theta_target, alpha_target])
        .ok_or_else(|| Error::Internal("power basis of primitive element is singular".into()))?;
    Ok((l.elem(sol[0].clone()), l.elem(sol[1].clone())))
}

/// Solves M y = b for each right-hand side, where M is given by columns.
fn solve_columns(columns: &[Vec<Rational>], rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = columns.len();
    let r = rhs.len();
    // augmented rows
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !Zero::is_zero(&a[i][col]))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || Zero::is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !Zero::is_zero(p) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some((0..r).map(|j| a.iter().map(|row| row[n + j].clone()).collect()).collect())
}
