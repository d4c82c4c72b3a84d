//! Number fields Q[t]/(m(t)) in the power basis.

mod height;
mod radical;
mod trager;

pub use height::{height_lower_bound, log_mahler_upper, weil_height};
pub use radical::{
    in_minus4_fourth_powers, is_pth_power, minus_four_test, power_test, replay_power_test, residue_obstruction,
    PowerMethod, PowerTest,
};
pub use trager::{factor_over_k, flatten, Flattening};

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::factor;
use crate::field::{Field, Scalar};
use crate::poly::{qring, Poly, PolyRing, QPoly};

/// Power-basis coordinates of an element; always exactly `degree` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfElem {
    pub coords: Vec<Rational>,
}

impl Scalar for NfElem {
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl NfElem {
    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }
}

struct Inner {
    min_poly: QPoly,
    degree: usize,
    /// t^k reduced to the power basis, for k in degree..=2*degree-2
    reductions: Vec<Vec<Rational>>,
}

/// The field Q[t]/(min_poly). Cheap to clone.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<Inner>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField").field("min_poly", &self.inner.min_poly).finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.min_poly == other.inner.min_poly
    }
}

impl Eq for NumberField {}

pub type KPoly = Poly<NfElem>;

impl NumberField {
    /// Builds the field after checking that `min_poly` is monic and
    /// irreducible over Q. Any linear polynomial yields Q itself.
    pub fn new(min_poly: QPoly) -> Result<Self> {
        let d = min_poly.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !qring().is_monic(&min_poly) {
            return Err(Error::NotMonic);
        }
        if d > 1 && !factor::is_irreducible_over_q(&min_poly)? {
            return Err(Error::NotIrreducible);
        }
        Ok(Self::new_unchecked(min_poly))
    }

    pub(crate) fn new_unchecked(min_poly: QPoly) -> Self {
        let d = min_poly.degree().expect("nonzero minimal polynomial");
        let min_poly = if d == 1 { QPoly::from_ints(&[0, 1]) } else { min_poly };
        let mut reductions = Vec::new();
        if d > 1 {
            // t^d = -sum m_i t^i
            let mut cur: Vec<Rational> = min_poly.coeffs()[..d].iter().map(|c| -c).collect();
            for _ in d..=2 * d - 2 {
                reductions.push(cur.clone());
                // multiply by t
                let top = cur[d - 1].clone();
                let mut next = vec![Rational::zero(); d];
                next[1..d].clone_from_slice(&cur[..(d - 1)]);
                for (n, r) in next.iter_mut().zip(&reductions[0]) {
                    *n += &top * r;
                }
                cur = next;
            }
        }
        NumberField { inner: Arc::new(Inner { min_poly, degree: d, reductions }) }
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(QPoly::from_ints(&[0, 1]))
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.inner.min_poly
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn is_rationals(&self) -> bool {
        self.inner.degree == 1
    }

    /// The class of t.
    pub fn generator(&self) -> NfElem {
        self.from_poly(&QPoly::from_ints(&[0, 1]))
    }

    /// Reduces an arbitrary rational polynomial in t into the field.
    pub fn from_poly(&self, p: &QPoly) -> NfElem {
        let d = self.degree();
        let r = if d == 1 {
            // t = 0 in Q[t]/(t)
            vec![p.constant_term().cloned().unwrap_or_else(Rational::zero)]
        } else {
            qring().rem(p, self.min_poly()).expect("nonzero modulus").into_coeffs()
        };
        let mut coords = r;
        coords.resize(d, Rational::zero());
        NfElem { coords }
    }

    pub fn elem(&self, coords: Vec<Rational>) -> NfElem {
        self.from_poly(&QPoly::new(coords))
    }

    pub fn coord_poly(&self, a: &NfElem) -> QPoly {
        QPoly::new(a.coords.clone())
    }

    pub fn pow(&self, a: &NfElem, k: u64) -> NfElem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        result
    }

    /// N_{K/Q}(a) = Res(m, a(t)) for monic m.
    pub fn norm(&self, a: &NfElem) -> Rational {
        if self.is_rationals() {
            return a.coords[0].clone();
        }
        qring().resultant(self.min_poly(), &self.coord_poly(a))
    }

    pub fn trace(&self, a: &NfElem) -> Rational {
        self.charpoly(a)
            .coeffs()
            .get(self.degree() - 1)
            .map(|c| -c)
            .unwrap_or_else(Rational::zero)
    }

    /// Characteristic polynomial of multiplication by `a`, over Q.
    pub fn charpoly(&self, a: &NfElem) -> QPoly {
        let lin = Poly::new(vec![self.neg(a), self.one()]);
        self.norm_poly(&lin)
    }

    /// Minimal polynomial of `a` over Q (monic).
    pub fn minpoly(&self, a: &NfElem) -> QPoly {
        qring()
            .squarefree_part(&self.charpoly(a))
            .expect("characteristic polynomial is nonzero")
    }

    /// N(x) = prod over embeddings of b^sigma(x): a rational polynomial of
    /// degree `[K:Q] * deg b`, computed by evaluation and interpolation.
    pub fn norm_poly(&self, b: &KPoly) -> QPoly {
        let Some(n) = b.degree() else { return QPoly::zero() };
        let q = qring();
        if self.is_rationals() {
            return b.map(|c| c.coords[0].clone());
        }
        if b.coeffs().iter().all(|c| c.as_rational().is_some()) {
            let r = b.map(|c| c.coords[0].clone());
            return q.pow(&r, self.degree() as u32);
        }
        let big_d = n * self.degree();
        let ring = PolyRing::new(self.clone());
        let xs: Vec<Rational> = (0..=big_d as i64)
            .map(|i| {
                let v = if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) };
                Rational::from_integer(v.into())
            })
            .collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| self.norm(&ring.eval(b, &self.from_rational(x))))
            .collect();
        q.interpolate(&xs, &ys)
    }

    pub fn embed_qpoly(&self, p: &QPoly) -> KPoly {
        p.map(|c| self.from_rational(c))
    }

    /// `Some(p)` over Q when every coefficient is rational.
    pub fn to_qpoly(&self, p: &KPoly) -> Option<QPoly> {
        let coeffs: Option<Vec<Rational>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
        coeffs.map(QPoly::new)
    }

    pub fn poly_ring(&self) -> PolyRing<NumberField> {
        PolyRing::new(self.clone())
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { coords: vec![Rational::zero(); self.degree()] }
    }

    fn one(&self) -> NfElem {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = Rational::one();
        NfElem { coords }
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { coords: a.coords.iter().map(|x| -x).collect() }
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let d = self.degree();
        if d == 1 {
            return NfElem { coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !Zero::is_zero(y) {
                    prod[i + j] += x * y;
                }
            }
        }
        let (low, high) = prod.split_at(d);
        let mut coords = low.to_vec();
        for (c, red) in high.iter().zip(&self.inner.reductions) {
            if Zero::is_zero(c) {
                continue;
            }
            for (k, r) in coords.iter_mut().zip(red) {
                *k += c * r;
            }
        }
        NfElem { coords }
    }

    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if Scalar::is_zero(a) {
            return None;
        }
        if self.is_rationals() {
            return Some(NfElem { coords: vec![a.coords[0].recip()] });
        }
        let (g, s, _) = qring().xgcd(&self.coord_poly(a), self.min_poly()).ok()?;
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s))
    }

    fn from_rational(&self, r: &Rational) -> NfElem {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = r.clone();
        NfElem { coords }
    }
}

/// Canonical ordering of polynomials over a number field.
pub fn cmp_kpoly(a: &KPoly, b: &KPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

pub(crate) fn sort_factors(v: &mut [(KPoly, u32)]) {
    v.sort_by(|a, b| cmp_kpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
}
